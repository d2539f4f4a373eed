/*
 * C interface to the XXZ thermal-machine engine.
 *
 * Every call returns an xxz_status; on failure a human-readable message is
 * available from xxz_last_error() on the calling thread. Handles are opaque
 * and owned by the caller, who releases them with the matching *_free().
 * Level indices in structs are the labels 1..4 of |Phi_1>..|Phi_4>.
 */
#ifndef XXZ_ENGINE_H
#define XXZ_ENGINE_H

#include <stddef.h>

#if defined(_WIN32)
#  define XXZ_API __declspec(dllexport)
#else
#  define XXZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xxz_status {
    XXZ_OK = 0,
    XXZ_ERR_INVALID_ARGUMENT = 1,
    XXZ_ERR_DEGENERATE_SUBSTANCE = 2,
    XXZ_ERR_NON_UNIQUE_STEADY_STATE = 3,
    XXZ_ERR_CLOSED_FORM_INAPPLICABLE = 4,
    XXZ_ERR_STABILITY_GUARD = 5,
    XXZ_ERR_CONFIG = 6,
    XXZ_ERR_INTERNAL = 99
} xxz_status;

typedef struct xxz_system_params {
    double B;
    double J;
    double delta;
} xxz_system_params;

typedef struct xxz_bath_params {
    double T_L;
    double T_R;
    double kappa;
    double epsilon;
} xxz_bath_params;

typedef struct xxz_transition {
    int upper;
    int lower;
    double omega;
    double left_weight;
    double right_weight;
    int degenerate;
} xxz_transition;

typedef struct xxz_pair_rates {
    xxz_transition transition;
    double left_emission;
    double left_absorption;
    double right_emission;
    double right_absorption;
    double absorption_sum; /* A_ij */
    double emission_sum;   /* E_ij */
} xxz_pair_rates;

typedef enum xxz_steady_method {
    XXZ_STEADY_SOLVE = 0,  /* row-replaced linear solve */
    XXZ_STEADY_CLOSED = 1, /* closed-form aggregates */
    XXZ_STEADY_TREE = 2    /* spanning-tree weights */
} xxz_steady_method;

typedef struct xxz_flows {
    double qdot_L;
    double qdot_R;
    double phi;
    double pi;
} xxz_flows;

typedef enum xxz_cycle_kind {
    XXZ_CYCLE_QOC = 0,
    XXZ_CYCLE_GQOC_SYM = 1,
    XXZ_CYCLE_GQOC_ASYM = 2
} xxz_cycle_kind;

typedef struct xxz_cycle_spec {
    xxz_cycle_kind kind;
    double B;
    double J;
    double delta_c;
    double delta_h;
    double kappa;
    double T_M;
    double dT;
    double T_floor;
} xxz_cycle_spec;

typedef struct xxz_cycle_result {
    double p_c[4];
    double p_h[4];
    double q12;
    double q34;
    double w;
    double eta;        /* valid only when eta_defined */
    int eta_defined;
    double xi12;
    double xi34;
    int positive_work;
    int unity;
    double pi_12;      /* valid only when pi_defined (generalized cycles) */
    double pi_34;
    int pi_defined;
    double relax_time_12; /* 0 when unavailable */
    double relax_time_34;
} xxz_cycle_result;

typedef struct xxz_trajectory xxz_trajectory;
typedef struct xxz_sweep_config xxz_sweep_config;
typedef struct xxz_table xxz_table;

XXZ_API const char* xxz_last_error(void);
XXZ_API const char* xxz_status_name(xxz_status status);

/* Fills defaults: J = 1, kappa = 0.05, T_floor = 0.005, delta_c = 0.10,
 * delta_h = 0.99. */
XXZ_API void xxz_cycle_spec_defaults(xxz_cycle_spec* spec);

XXZ_API xxz_status xxz_eigenenergies(const xxz_system_params* sys, double energies[4]);
XXZ_API xxz_status xxz_ground_state(const xxz_system_params* sys, int* label);
XXZ_API xxz_status xxz_hamiltonian_matrix(const xxz_system_params* sys, double row_major[16]);
XXZ_API xxz_status xxz_transition_table(const xxz_system_params* sys, double epsilon,
                                        xxz_transition table[4]);
XXZ_API xxz_status xxz_bose_occupation(double omega, double T, double* n);
XXZ_API xxz_status xxz_rates(const xxz_system_params* sys, const xxz_bath_params* bath,
                             xxz_pair_rates rates[4]);
/* Maximum deviation of the aggregates from their large-gradient forms;
 * requires epsilon == 1. */
XXZ_API xxz_status xxz_high_gradient_deviation(const xxz_system_params* sys,
                                               const xxz_bath_params* bath, double* max_deviation);

/* residual (optional) receives ||M P||_inf. */
XXZ_API xxz_status xxz_steady_state(const xxz_system_params* sys, const xxz_bath_params* bath,
                                    xxz_steady_method method, double populations[4],
                                    double* residual);
XXZ_API xxz_status xxz_gibbs_state(const xxz_system_params* sys, double T, double populations[4]);
XXZ_API xxz_status xxz_steady_flows(const xxz_system_params* sys, const xxz_bath_params* bath,
                                    xxz_flows* flows);
XXZ_API xxz_status xxz_spectral_gap(const xxz_system_params* sys, const xxz_bath_params* bath,
                                    double* gap);

XXZ_API xxz_status xxz_cycle_evaluate(const xxz_cycle_spec* spec, xxz_cycle_result* result);
XXZ_API xxz_status xxz_w_max(double delta_c, double delta_h, double* w);
/* Bath settings of the two non-equilibrium stages (left hot / right cold,
 * then swapped). */
XXZ_API xxz_status xxz_cycle_stage_baths(const xxz_cycle_spec* spec, xxz_bath_params* stage12,
                                         xxz_bath_params* stage34);

/* initial == NULL starts from the maximally mixed state. */
XXZ_API xxz_status xxz_relax(const xxz_system_params* sys, const xxz_bath_params* bath,
                             const double initial[4], double t_end, double dt,
                             xxz_trajectory** out);
XXZ_API size_t xxz_trajectory_size(const xxz_trajectory* traj);
XXZ_API xxz_status xxz_trajectory_point(const xxz_trajectory* traj, size_t i, double* t,
                                        double populations[4]);
/* CSV with columns t,P1..P4,S,dS_dt,phi,pi; every stride-th sample plus the
 * last one. The string stays owned by the trajectory. */
XXZ_API xxz_status xxz_trajectory_csv(xxz_trajectory* traj, size_t stride, const char** csv);
XXZ_API void xxz_trajectory_free(xxz_trajectory* traj);

XXZ_API xxz_status xxz_sweep_config_parse(const char* json, xxz_sweep_config** out);
XXZ_API size_t xxz_figure_panel_count(const char* preset);
XXZ_API xxz_status xxz_figure_panel(const char* preset, size_t panel, xxz_sweep_config** out);
XXZ_API const char* xxz_sweep_config_label(const xxz_sweep_config* cfg);
XXZ_API size_t xxz_sweep_config_grid_size(const xxz_sweep_config* cfg);
XXZ_API void xxz_sweep_config_free(xxz_sweep_config* cfg);

/* threads == 0 uses all hardware threads. Point failures become #ERR rows;
 * only config problems fail the call. */
XXZ_API xxz_status xxz_sweep_run(const xxz_sweep_config* cfg, unsigned threads, xxz_table** out);
/* Value of XXZ_ENGINE_THREADS (0 = auto). */
XXZ_API xxz_status xxz_threads_from_environment(unsigned* threads);
XXZ_API size_t xxz_table_rows(const xxz_table* table);
XXZ_API size_t xxz_table_error_rows(const xxz_table* table);
/* The string stays owned by the table. */
XXZ_API const char* xxz_table_csv(xxz_table* table);
XXZ_API void xxz_table_free(xxz_table* table);

/* 12 significant digits; writes at most cap bytes including the NUL. */
XXZ_API void xxz_format_number(double v, char* buf, size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* XXZ_ENGINE_H */
