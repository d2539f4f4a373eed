#pragma once

#include "xxz/cycles.hpp"
#include "xxz/error.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xxz {

enum class SweepParam { B, T_M, dT, delta_c, delta_h, kappa };

std::string_view sweep_param_name(SweepParam p) noexcept;
std::optional<SweepParam> parse_sweep_param(std::string_view name) noexcept;

struct Axis {
    SweepParam param = SweepParam::B;
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 2;

    double value(std::size_t i) const noexcept;
};

struct SweepConfig {
    std::string label;  // panel name for presets, free-form otherwise
    CycleSpec base;
    std::vector<Axis> axes;
    std::vector<CycleKind> cycles;
    std::vector<std::string> outputs;  // empty selects all columns

    /// Throws Error(config_error).
    void validate() const;

    std::size_t grid_size() const noexcept;
};

/// Output column groups accepted in SweepConfig::outputs.
const std::vector<std::string>& known_outputs();

SweepConfig parse_sweep_config(std::string_view json_text);

struct SweepRow {
    std::vector<double> axis_values;
    CycleKind cycle = CycleKind::gqoc_asym;
    std::variant<CycleResult, ErrorCode> outcome;
};

struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::string> axis_names;
    std::vector<std::string> outputs;  // expanded group names, in column order
    std::vector<SweepRow> rows;

    std::size_t error_rows() const noexcept;
    void write_csv(std::ostream& os) const;
    std::string to_csv() const;
};

/// threads == 0 picks std::thread::hardware_concurrency().
SweepTable run_sweep(const SweepConfig& cfg, unsigned threads = 1);

/// Reads XXZ_ENGINE_THREADS (0 or unset = auto).
unsigned threads_from_environment();

const std::vector<std::string>& figure_names();

/// One config per figure panel; throws Error(config_error) on unknown names.
std::vector<SweepConfig> figure_preset(std::string_view name);

}  // namespace xxz
