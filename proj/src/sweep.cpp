#include "xxz/sweep.hpp"

#include "xxz/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace xxz {

namespace {

constexpr std::size_t kMaxAxes = 2;

[[noreturn]] void config_fail(const std::string& msg) {
    throw Error(ErrorCode::config_error, msg);
}

const std::vector<SweepParam>& all_params() {
    static const std::vector<SweepParam> v{SweepParam::B,       SweepParam::T_M,     SweepParam::dT,
                                           SweepParam::delta_c, SweepParam::delta_h, SweepParam::kappa};
    return v;
}

void assign(CycleSpec& spec, SweepParam p, double v) {
    switch (p) {
        case SweepParam::B: spec.B = v; break;
        case SweepParam::T_M: spec.T_M = v; break;
        case SweepParam::dT: spec.dT = v; break;
        case SweepParam::delta_c: spec.delta_c = v; break;
        case SweepParam::delta_h: spec.delta_h = v; break;
        case SweepParam::kappa: spec.kappa = v; break;
    }
}

// Column groups; groups with four entries expand to <name>1..<name>4.
const std::vector<std::string> kOutputs{
    "q12",  "q34",   "w",     "eta", "xi12", "xi34",          "xi_diff", "pi_12",    "pi_34",
    "pi_total", "p_c", "p_h", "e_c", "e_h",  "positive_work", "unity",   "relax_12", "relax_34",
};

bool is_vector_group(const std::string& g) {
    return g == "p_c" || g == "p_h" || g == "e_c" || g == "e_h";
}

std::optional<double> sum_if_both(const std::optional<double>& a, const std::optional<double>& b) {
    if (a && b) return *a + *b;
    return std::nullopt;
}

void append_group(std::vector<std::string>& cells, const std::string& g, const CycleResult& r) {
    auto num = [&](double v) { cells.push_back(format_number(v)); };
    auto opt = [&](const std::optional<double>& v) { cells.push_back(format_number(v)); };
    auto flag = [&](bool b) { cells.emplace_back(b ? "1" : "0"); };
    auto quad = [&](const std::array<double, 4>& a) {
        for (double v : a) num(v);
    };
    if (g == "q12") num(r.q12);
    else if (g == "q34") num(r.q34);
    else if (g == "w") num(r.w);
    else if (g == "eta") opt(r.eta);
    else if (g == "xi12") num(r.xi12);
    else if (g == "xi34") num(r.xi34);
    else if (g == "xi_diff") num(r.xi34 - r.xi12);
    else if (g == "pi_12") opt(r.pi_12);
    else if (g == "pi_34") opt(r.pi_34);
    else if (g == "pi_total") opt(sum_if_both(r.pi_12, r.pi_34));
    else if (g == "p_c") quad(r.p_c.values());
    else if (g == "p_h") quad(r.p_h.values());
    else if (g == "e_c") quad(r.e_c.energies);
    else if (g == "e_h") quad(r.e_h.energies);
    else if (g == "positive_work") flag(r.positive_work);
    else if (g == "unity") flag(r.unity);
    else if (g == "relax_12") opt(r.relax_time_12);
    else if (g == "relax_34") opt(r.relax_time_34);
}

}  // namespace

std::string_view sweep_param_name(SweepParam p) noexcept {
    switch (p) {
        case SweepParam::B: return "B";
        case SweepParam::T_M: return "T_M";
        case SweepParam::dT: return "dT";
        case SweepParam::delta_c: return "delta_c";
        case SweepParam::delta_h: return "delta_h";
        case SweepParam::kappa: return "kappa";
    }
    return "unknown";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name) noexcept {
    for (SweepParam p : all_params())
        if (sweep_param_name(p) == name) return p;
    return std::nullopt;
}

double Axis::value(std::size_t i) const noexcept {
    // Weighted form keeps grids symmetric about 0 exactly (B_i == -B_{n-1-i}).
    const double n = static_cast<double>(count - 1);
    const double k = static_cast<double>(i);
    return (start * (n - k) + stop * k) / n;
}

const std::vector<std::string>& known_outputs() { return kOutputs; }

void SweepConfig::validate() const {
    if (axes.empty() || axes.size() > kMaxAxes) config_fail("a sweep needs one or two axes");
    std::set<SweepParam> seen;
    for (const Axis& a : axes) {
        if (a.count < 2) config_fail("axis '" + std::string(sweep_param_name(a.param)) + "' needs count >= 2");
        if (!std::isfinite(a.start) || !std::isfinite(a.stop)) config_fail("axis bounds must be finite");
        if (!seen.insert(a.param).second) {
            config_fail("axis '" + std::string(sweep_param_name(a.param)) + "' listed twice");
        }
    }
    if (cycles.empty()) config_fail("cycle set is empty");
    std::set<CycleKind> kinds(cycles.begin(), cycles.end());
    if (kinds.size() != cycles.size()) config_fail("cycle listed twice");
    std::set<std::string> outs;
    for (const std::string& o : outputs) {
        if (std::find(kOutputs.begin(), kOutputs.end(), o) == kOutputs.end()) {
            config_fail("unknown output column '" + o + "'");
        }
        if (!outs.insert(o).second) config_fail("output '" + o + "' listed twice");
    }
}

std::size_t SweepConfig::grid_size() const noexcept {
    std::size_t n = 1;
    for (const Axis& a : axes) n *= a.count;
    return n;
}

SweepConfig parse_sweep_config(std::string_view json_text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::exception& ex) {
        config_fail(std::string("malformed JSON: ") + ex.what());
    }
    if (!doc.is_object()) config_fail("config must be a JSON object");

    SweepConfig cfg;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "label") {
                cfg.label = value.get<std::string>();
            } else if (key == "base") {
                if (!value.is_object()) config_fail("'base' must be an object");
                for (const auto& [bk, bv] : value.items()) {
                    if (bk == "J") cfg.base.J = bv.get<double>();
                    else if (bk == "T_floor") cfg.base.T_floor = bv.get<double>();
                    else if (bk == "kind") {
                        auto k = parse_cycle_kind(bv.get<std::string>());
                        if (!k) config_fail("unknown cycle kind in base");
                        cfg.base.kind = *k;
                    } else if (auto p = parse_sweep_param(bk)) {
                        assign(cfg.base, *p, bv.get<double>());
                    } else {
                        config_fail("unknown base field '" + bk + "'");
                    }
                }
            } else if (key == "axes") {
                for (const auto& a : value) {
                    Axis axis;
                    for (const auto& [ak, av] : a.items()) {
                        if (ak == "name") {
                            auto p = parse_sweep_param(av.get<std::string>());
                            if (!p) config_fail("unknown axis parameter '" + av.get<std::string>() + "'");
                            axis.param = *p;
                        } else if (ak == "start") axis.start = av.get<double>();
                        else if (ak == "stop") axis.stop = av.get<double>();
                        else if (ak == "count") axis.count = av.get<std::size_t>();
                        else if (ak == "spacing") {
                            if (av.get<std::string>() != "linear") config_fail("only linear spacing is supported");
                        } else {
                            config_fail("unknown axis field '" + ak + "'");
                        }
                    }
                    if (!a.contains("name") || !a.contains("start") || !a.contains("stop") || !a.contains("count")) {
                        config_fail("axis needs name, start, stop and count");
                    }
                    cfg.axes.push_back(axis);
                }
            } else if (key == "cycles") {
                for (const auto& c : value) {
                    auto k = parse_cycle_kind(c.get<std::string>());
                    if (!k) config_fail("unknown cycle '" + c.get<std::string>() + "'");
                    cfg.cycles.push_back(*k);
                }
            } else if (key == "outputs") {
                for (const auto& o : value) cfg.outputs.push_back(o.get<std::string>());
            } else {
                config_fail("unknown config field '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        config_fail(std::string("config type error: ") + ex.what());
    }
    cfg.validate();
    return cfg;
}

std::size_t SweepTable::error_rows() const noexcept {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) {
        return std::holds_alternative<ErrorCode>(r.outcome);
    }));
}

void SweepTable::write_csv(std::ostream& os) const {
    auto write_line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    write_line(header);
    const std::size_t n_out = header.size() - axis_names.size() - 1;
    std::vector<std::string> cells;
    for (const SweepRow& row : rows) {
        cells.clear();
        for (double v : row.axis_values) cells.push_back(format_number(v));
        cells.emplace_back(cycle_kind_name(row.cycle));
        if (const auto* r = std::get_if<CycleResult>(&row.outcome)) {
            for (const std::string& g : outputs) append_group(cells, g, *r);
        } else {
            const std::string marker = "#ERR:" + std::string(error_code_name(std::get<ErrorCode>(row.outcome)));
            cells.insert(cells.end(), n_out, marker);
        }
        write_line(cells);
    }
}

std::string SweepTable::to_csv() const {
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

SweepTable run_sweep(const SweepConfig& cfg, unsigned threads) {
    cfg.validate();
    SweepTable table;
    for (const Axis& a : cfg.axes) table.axis_names.emplace_back(sweep_param_name(a.param));
    table.outputs = cfg.outputs.empty() ? kOutputs : cfg.outputs;
    table.header = table.axis_names;
    table.header.emplace_back("cycle");
    for (const std::string& g : table.outputs) {
        if (is_vector_group(g)) {
            for (int i = 1; i <= 4; ++i) table.header.push_back(g + std::to_string(i));
        } else {
            table.header.push_back(g);
        }
    }

    const std::size_t points = cfg.grid_size();
    const std::size_t n_cycles = cfg.cycles.size();
    const std::size_t total = points * n_cycles;
    table.rows.resize(total);

    auto evaluate = [&](std::size_t task) {
        const std::size_t point = task / n_cycles;
        SweepRow& row = table.rows[task];
        row.cycle = cfg.cycles[task % n_cycles];
        CycleSpec spec = cfg.base;
        spec.kind = row.cycle;
        // Row-major: the first axis varies slowest.
        std::size_t rem = point;
        std::size_t stride = points;
        row.axis_values.resize(cfg.axes.size());
        for (std::size_t a = 0; a < cfg.axes.size(); ++a) {
            stride /= cfg.axes[a].count;
            const std::size_t i = rem / stride;
            rem %= stride;
            row.axis_values[a] = cfg.axes[a].value(i);
            assign(spec, cfg.axes[a].param, row.axis_values[a]);
        }
        try {
            row.outcome = evaluate_cycle(spec);
        } catch (const Error& ex) {
            row.outcome = ex.code();
        }
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));
    if (workers <= 1) {
        for (std::size_t t = 0; t < total; ++t) evaluate(t);
        return table;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t t = next++; t < total; t = next++) evaluate(t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return table;
}

unsigned threads_from_environment() {
    const char* raw = std::getenv("XXZ_ENGINE_THREADS");
    if (!raw || !*raw) return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v < 0) {
        config_fail(std::string("XXZ_ENGINE_THREADS must be a non-negative integer, got '") + raw + "'");
    }
    return static_cast<unsigned>(v);
}

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "figEP"};
    return names;
}

namespace {

CycleSpec preset_base(double T_M) {
    CycleSpec s;
    s.delta_c = 0.10;
    s.delta_h = 0.99;
    s.kappa = 0.05;
    s.T_floor = kDefaultTemperatureFloor;
    s.T_M = T_M;
    s.dT = 2.0 * T_M;
    return s;
}

std::string panel_label(double T_M) {
    return "TM" + format_number(T_M);
}

SweepConfig field_sweep(double T_M, std::vector<CycleKind> cycles, std::vector<std::string> outputs) {
    SweepConfig c;
    c.label = panel_label(T_M);
    c.base = preset_base(T_M);
    c.axes = {Axis{SweepParam::B, -3.0, 3.0, 601}};
    c.cycles = std::move(cycles);
    c.outputs = std::move(outputs);
    return c;
}

}  // namespace

std::vector<SweepConfig> figure_preset(std::string_view name) {
    const std::vector<CycleKind> all{CycleKind::gqoc_asym, CycleKind::gqoc_sym, CycleKind::qoc};
    const std::array<double, 3> temps{0.21, 1.2, 6.0};
    std::vector<SweepConfig> out;
    if (name == "fig2") {
        for (double t : temps) out.push_back(field_sweep(t, all, {"xi_diff", "w"}));
    } else if (name == "fig3") {
        out.push_back(field_sweep(1.2, all, {"w", "e_c", "e_h", "p_c", "p_h"}));
    } else if (name == "fig4") {
        for (double t : temps)
            out.push_back(field_sweep(t, {CycleKind::gqoc_asym, CycleKind::qoc}, {"w", "q12", "q34", "eta"}));
    } else if (name == "fig5") {
        SweepConfig c;
        c.label = panel_label(6.0);
        c.base = preset_base(6.0);
        c.axes = {Axis{SweepParam::B, -3.0, 3.0, 241}, Axis{SweepParam::dT, 0.0, 12.0, 121}};
        c.cycles = {CycleKind::gqoc_asym};
        c.outputs = {"w", "eta"};
        out.push_back(std::move(c));
    } else if (name == "figEP") {
        for (double t : temps)
            out.push_back(field_sweep(t, {CycleKind::gqoc_asym}, {"pi_12", "pi_34", "pi_total"}));
    } else {
        config_fail("unknown figure preset '" + std::string(name) + "'");
    }
    return out;
}

}  // namespace xxz
