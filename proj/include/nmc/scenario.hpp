#pragma once

#include "nmc/coefficients.hpp"
#include "nmc/entanglement.hpp"
#include "nmc/propagator.hpp"
#include "nmc/spectral_bath.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace nmc {

inline constexpr int run_format_version = 1;

/// One simulation: bath, cavity pair and grid, initial squeezing, outputs.
struct Scenario {
    SpectralDensity spectral{1.0, 0.005, 30.0};
    ModelConfig model{1.0, 0.5, 50.0, 1e-3};
    double squeezing = 3.0;
    std::filesystem::path output_directory = "out";
    std::size_t stride = 10;

    /// Throws UsageError naming the offending field ("scenario.eta: ...").
    void validate() const;
};

/// Named parameter sets: fig1, fig2 (coefficients, kappa = 0.5), fig3
/// (kappa = 0) and fig4 (kappa = 0.5); all use eta = 0.005, omega_c = 30, r = 3.
Scenario preset(std::string_view name);
std::vector<std::string> preset_names();

/// Flat JSON keys: n, eta, omega_c, kappa, r, t_max, dt, out, stride.
/// Keys absent from the document keep the values of `base`.
Scenario scenario_from_json(const nlohmann::json& doc, Scenario base = {});
nlohmann::json scenario_to_json(const Scenario& sc);

/// Sets one scalar field by its JSON key; throws UsageError on unknown names.
void set_scenario_field(Scenario& sc, std::string_view key, double value);

/// Full in-memory pipeline output.
struct Simulation {
    PropagatorTrajectory trajectory;
    std::vector<MasterCoefficients> coefficients;
    std::vector<FrequencyShift> shifts;
    EntanglementSeries entanglement;
};

Simulation simulate(const Scenario& sc, kernels::Backend backend = kernels::Backend::openmp);

inline constexpr double asymptotic_window_floor = 1e-4;

/// Long-time frequency shift: mean of delta_omega over the second half of the
/// leading interval on which |s|^2 >= asymptotic_window_floor.
double asymptotic_delta_omega(const Simulation& sim);

struct RunRecord {
    Scenario scenario;
    ConvergenceReport convergence;
    double saturation_time = -1.0; ///< negative when |s| never saturated
    double min_nu = 0.0;           ///< smallest un-transposed symplectic eigenvalue seen
    double final_e_n = 0.0;
    double asymptotic_delta_omega = 0.0;
    double wall_seconds = 0.0;
    std::vector<std::filesystem::path> artifacts;
    std::vector<std::string> warnings;
    int format_version = run_format_version;
};

nlohmann::json run_record_to_json(const RunRecord& rec);

/// Runs the pipeline and writes coefficients.csv, negativity.csv,
/// propagator.csv and run.json into the scenario's output directory.
RunRecord run_scenario(const Scenario& sc);

/// Runs `base` once per value of `axis` (a JSON key) in order. Point i writes
/// to <out>/<axis>_<i>; <out>/index.csv summarises the sweep.
std::vector<RunRecord> sweep(const Scenario& base, std::string_view axis, const std::vector<double>& values);

/// Fixed CSV number format: 12 significant digits.
std::string format_number(double x);

} // namespace nmc
