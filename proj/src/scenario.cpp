#include "nmc/scenario.hpp"

#include "nmc/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace nmc {

namespace {

[[noreturn]] void field_error(std::string_view field, const std::string& msg)
{
    throw UsageError("scenario." + std::string(field) + ": " + msg);
}

} // namespace

void Scenario::validate() const
{
    if (!(spectral.exponent > 0.0) || !std::isfinite(spectral.exponent))
        field_error("n", "must be > 0");
    if (!(spectral.coupling >= 0.0) || !std::isfinite(spectral.coupling))
        field_error("eta", "must be >= 0");
    if (!(spectral.cutoff > 0.0) || !std::isfinite(spectral.cutoff))
        field_error("omega_c", "must be > 0");
    if (!std::isfinite(model.coupling))
        field_error("kappa", "must be finite");
    if (!(model.dt > 0.0) || !std::isfinite(model.dt))
        field_error("dt", "must be > 0");
    if (!(model.t_max >= model.dt) || !std::isfinite(model.t_max))
        field_error("t_max", "must be >= dt");
    if (model.t_max / model.dt >= static_cast<double>(max_table_size))
        field_error("t_max", "grid exceeds the memory budget (t_max/dt too large)");
    if (!(squeezing >= 0.0) || !std::isfinite(squeezing))
        field_error("r", "must be >= 0");
    if (stride < 1)
        field_error("stride", "must be >= 1");
    if (output_directory.empty())
        field_error("out", "must not be empty");
}

Scenario preset(std::string_view name)
{
    Scenario sc;
    sc.spectral = SpectralDensity::ohmic(0.005, 30.0);
    sc.squeezing = 3.0;
    sc.model.t_max = 50.0;
    sc.model.dt = 1e-3;
    if (name == "fig1" || name == "fig2" || name == "fig4")
        sc.model.coupling = 0.5;
    else if (name == "fig3")
        sc.model.coupling = 0.0;
    else
        throw UsageError("unknown preset '" + std::string(name) + "' (expected fig1, fig2, fig3 or fig4)");
    sc.output_directory = std::string(name);
    return sc;
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4"}; }

namespace {

double number_field(const nlohmann::json& v, std::string_view key)
{
    if (!v.is_number())
        field_error(key, "expected a number, got " + std::string(v.type_name()));
    return v.get<double>();
}

} // namespace

void set_scenario_field(Scenario& sc, std::string_view key, double value)
{
    if (key == "n")
        sc.spectral.exponent = value;
    else if (key == "eta")
        sc.spectral.coupling = value;
    else if (key == "omega_c")
        sc.spectral.cutoff = value;
    else if (key == "kappa")
        sc.model.coupling = value;
    else if (key == "r")
        sc.squeezing = value;
    else if (key == "t_max")
        sc.model.t_max = value;
    else if (key == "dt")
        sc.model.dt = value;
    else
        throw UsageError("unknown scenario field '" + std::string(key) +
                         "' (expected n, eta, omega_c, kappa, r, t_max or dt)");
}

Scenario scenario_from_json(const nlohmann::json& doc, Scenario base)
{
    if (!doc.is_object())
        throw UsageError("scenario: expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "out") {
            if (!value.is_string())
                field_error(key, "expected a string");
            base.output_directory = value.get<std::string>();
        } else if (key == "stride") {
            if (!value.is_number_integer() || value.get<long long>() < 1)
                field_error(key, "expected an integer >= 1");
            base.stride = value.get<std::size_t>();
        } else if (key == "n" || key == "eta" || key == "omega_c" || key == "kappa" || key == "r" ||
                   key == "t_max" || key == "dt") {
            set_scenario_field(base, key, number_field(value, key));
        } else {
            field_error(key, "unknown field");
        }
    }
    return base;
}

nlohmann::json scenario_to_json(const Scenario& sc)
{
    return {{"n", sc.spectral.exponent},
            {"eta", sc.spectral.coupling},
            {"omega_c", sc.spectral.cutoff},
            {"kappa", sc.model.coupling},
            {"r", sc.squeezing},
            {"t_max", sc.model.t_max},
            {"dt", sc.model.dt},
            {"out", sc.output_directory.string()},
            {"stride", sc.stride}};
}

Simulation simulate(const Scenario& sc, kernels::Backend backend)
{
    sc.validate();
    Simulation sim;
    sim.trajectory = assemble_trajectory(solve_center_amplitude(sc.spectral, sc.model, backend), sc.model);
    sim.coefficients = master_coefficients(sim.trajectory);
    sim.shifts = frequency_shifts(sim.coefficients, sc.model.field_frequency, sc.model.coupling);
    sim.entanglement = entanglement_series(sim.trajectory, sc.squeezing, backend);
    return sim;
}

double asymptotic_delta_omega(const Simulation& sim)
{
    // Once s is dominated by the bath's non-exponential tail, s'/s no longer
    // describes a shifted mode. Average over the second half of the window in
    // which |s|^2 >= asymptotic_window_floor.
    const auto& s = sim.trajectory.s;
    std::size_t end = 0;
    while (end < s.size() && std::norm(s[end]) >= asymptotic_window_floor && !sim.coefficients[end].saturated)
        ++end;
    if (end == 0)
        return 0.0;
    const std::size_t begin = end / 2;
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k)
        sum += sim.shifts[k].delta_omega;
    return sum / static_cast<double>(end - begin);
}

std::string format_number(double x)
{
    if (x == 0.0)
        x = 0.0; // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary)
    {
        if (!out_)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
    }

    void row(std::initializer_list<std::string> cells)
    {
        bool first = true;
        for (const auto& c : cells) {
            if (!first)
                out_ << ',';
            out_ << c;
            first = false;
        }
        out_ << '\n';
    }

    void close()
    {
        out_.close();
        if (!out_)
            throw std::runtime_error("failed writing " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

void write_outputs(const Simulation& sim, const Scenario& sc, RunRecord& rec)
{
    const auto& dir = sc.output_directory;
    const auto& traj = sim.trajectory;
    const auto& ent = sim.entanglement;
    const std::size_t n = traj.size();

    {
        CsvWriter csv(dir / "coefficients.csv");
        csv.row({"t", "delta_omega", "gamma"});
        for (std::size_t k = 0; k < n; k += sc.stride)
            csv.row({format_number(traj.times[k]), format_number(sim.shifts[k].delta_omega),
                     format_number(sim.coefficients[k].gamma)});
        csv.close();
        rec.artifacts.push_back(dir / "coefficients.csv");
    }
    {
        CsvWriter csv(dir / "negativity.csv");
        csv.row({"t", "e_n", "nu_min"});
        for (std::size_t k = 0; k < n; k += sc.stride)
            csv.row({format_number(traj.times[k]), format_number(ent.e_n[k]), format_number(ent.nu_min[k])});
        csv.close();
        rec.artifacts.push_back(dir / "negativity.csv");
    }
    {
        CsvWriter csv(dir / "propagator.csv");
        csv.row({"t", "re_u", "im_u", "re_v", "im_v", "abs_s"});
        for (std::size_t k = 0; k < n; k += sc.stride)
            csv.row({format_number(traj.times[k]), format_number(traj.u[k].real()), format_number(traj.u[k].imag()),
                     format_number(traj.v[k].real()), format_number(traj.v[k].imag()),
                     format_number(std::abs(traj.s[k]))});
        csv.close();
        rec.artifacts.push_back(dir / "propagator.csv");
    }
}

} // namespace

nlohmann::json run_record_to_json(const RunRecord& rec)
{
    nlohmann::json artifacts = nlohmann::json::array();
    for (const auto& p : rec.artifacts)
        artifacts.push_back(p.filename().string());
    nlohmann::json sat = nullptr;
    if (rec.saturation_time >= 0.0)
        sat = rec.saturation_time;
    return {{"format_version", rec.format_version},
            {"scenario", scenario_to_json(rec.scenario)},
            {"diagnostics",
             {{"convergence",
               {{"coarse_dt", rec.convergence.coarse_dt},
                {"max_change", rec.convergence.max_change},
                {"estimate", rec.convergence.estimate},
                {"passed", rec.convergence.passed}}},
              {"saturation_time", sat},
              {"min_nu", rec.min_nu}}},
            {"summary", {{"final_e_n", rec.final_e_n}, {"asymptotic_delta_omega", rec.asymptotic_delta_omega}}},
            {"wall_seconds", rec.wall_seconds},
            {"artifacts", artifacts},
            {"warnings", rec.warnings}};
}

RunRecord run_scenario(const Scenario& sc)
{
    sc.validate();
    const auto start = std::chrono::steady_clock::now();

    std::error_code ec;
    std::filesystem::create_directories(sc.output_directory, ec);
    if (ec || !std::filesystem::is_directory(sc.output_directory))
        throw std::runtime_error("cannot create output directory " + sc.output_directory.string() +
                                 (ec ? ": " + ec.message() : std::string()));

    RunRecord rec;
    rec.scenario = sc;

    const Simulation sim = simulate(sc);

    CenterAmplitude fine{sim.trajectory.s, sim.trajectory.sdot};
    rec.convergence = check_step_halving(sc.spectral, sc.model, fine);
    if (!rec.convergence.passed)
        rec.warnings.push_back("step-halving error estimate " + format_number(rec.convergence.estimate) +
                               " exceeds 1e-05; consider a smaller dt");

    rec.saturation_time = saturation_time(sim.coefficients);
    rec.min_nu = *std::min_element(sim.entanglement.nu_min.begin(), sim.entanglement.nu_min.end());
    if (rec.min_nu < 0.5 - 1e-9)
        rec.warnings.push_back("un-transposed symplectic eigenvalue " + format_number(rec.min_nu) + " below 1/2");
    rec.final_e_n = sim.entanglement.e_n.back();
    rec.asymptotic_delta_omega = asymptotic_delta_omega(sim);

    write_outputs(sim, sc, rec);
    rec.artifacts.push_back(sc.output_directory / "run.json");
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ofstream meta(sc.output_directory / "run.json", std::ios::binary);
    meta << run_record_to_json(rec).dump(2) << '\n';
    if (!meta)
        throw std::runtime_error("failed writing " + (sc.output_directory / "run.json").string());
    return rec;
}

std::vector<RunRecord> sweep(const Scenario& base, std::string_view axis, const std::vector<double>& values)
{
    {
        Scenario probe = base;
        set_scenario_field(probe, axis, 0.0); // rejects unknown axis names before any work
    }
    std::vector<RunRecord> records;
    records.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        Scenario sc = base;
        set_scenario_field(sc, axis, values[i]);
        sc.output_directory = base.output_directory / (std::string(axis) + "_" + std::to_string(i));
        records.push_back(run_scenario(sc));
    }

    std::filesystem::create_directories(base.output_directory);
    CsvWriter index(base.output_directory / "index.csv");
    index.row({std::string(axis), "final_e_n", "asymptotic_delta_omega", "directory"});
    for (std::size_t i = 0; i < values.size(); ++i)
        index.row({format_number(values[i]), format_number(records[i].final_e_n),
                   format_number(records[i].asymptotic_delta_omega),
                   records[i].scenario.output_directory.filename().string()});
    index.close();
    return records;
}

} // namespace nmc
