// nmc: non-Markovian entanglement dynamics of a two-mode squeezed channel.
//
//   nmc run   [--preset figN] [--config scenario.json] [overrides...]
//   nmc sweep --axis n --values 0.5,1,3 [same options as run]
//   nmc presets

#include "nmc/error.hpp"
#include "nmc/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

struct Overrides {
    std::string preset;
    std::string config;
    std::optional<double> n, eta, omega_c, kappa, r, t_max, dt;
    std::optional<std::string> out;
    std::optional<std::size_t> stride;
};

void add_scenario_options(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--preset", o.preset, "Start from a bundled scenario (fig1..fig4)");
    cmd->add_option("--config", o.config, "Flat JSON scenario file")->check(CLI::ExistingFile);
    cmd->add_option("--n", o.n, "Spectral exponent (1 Ohmic, <1 sub-Ohmic, >1 super-Ohmic)");
    cmd->add_option("--eta", o.eta, "Dimensionless bath coupling");
    cmd->add_option("--omega-c", o.omega_c, "Bath cutoff frequency");
    cmd->add_option("--kappa", o.kappa, "Coupling between the two fields");
    cmd->add_option("--r", o.r, "Initial squeezing parameter");
    cmd->add_option("--t-max", o.t_max, "Simulated time horizon");
    cmd->add_option("--dt", o.dt, "Time step");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--stride", o.stride, "Write every stride-th grid sample");
}

nmc::Scenario resolve(const Overrides& o)
{
    nmc::Scenario sc = o.preset.empty() ? nmc::Scenario{} : nmc::preset(o.preset);
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::parse_error& e) {
            throw nmc::UsageError(o.config + ": " + e.what());
        }
        sc = nmc::scenario_from_json(doc, sc);
    }
    auto apply = [&sc](const char* key, const std::optional<double>& v) {
        if (v)
            nmc::set_scenario_field(sc, key, *v);
    };
    apply("n", o.n);
    apply("eta", o.eta);
    apply("omega_c", o.omega_c);
    apply("kappa", o.kappa);
    apply("r", o.r);
    apply("t_max", o.t_max);
    apply("dt", o.dt);
    if (o.out)
        sc.output_directory = *o.out;
    if (o.stride)
        sc.stride = *o.stride;
    sc.validate();
    return sc;
}

std::vector<double> parse_values(const std::string& list)
{
    std::vector<double> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw nmc::UsageError("--values: cannot parse '" + item + "' as a number");
        }
    }
    if (values.empty())
        throw nmc::UsageError("--values: empty list");
    return values;
}

void report(const nmc::RunRecord& rec)
{
    std::cout << rec.scenario.output_directory.string() << ": final E_N = " << nmc::format_number(rec.final_e_n)
              << ", asymptotic delta_omega = " << nmc::format_number(rec.asymptotic_delta_omega) << ", "
              << nmc::format_number(rec.wall_seconds) << " s\n";
    for (const auto& w : rec.warnings)
        std::cerr << "warning: " << w << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact non-Markovian entanglement dynamics of a squeezed-state channel in a common bath"};
    app.require_subcommand(1);

    Overrides run_opts;
    auto* run = app.add_subcommand("run", "Run one scenario and write CSV + run.json");
    add_scenario_options(run, run_opts);

    Overrides sweep_opts;
    std::string axis;
    std::string values;
    auto* sw = app.add_subcommand("sweep", "Run a scenario for each value of one parameter");
    add_scenario_options(sw, sweep_opts);
    sw->add_option("--axis", axis, "Parameter name (n, eta, omega_c, kappa, r, t_max, dt)")->required();
    sw->add_option("--values", values, "Comma-separated values")->required();

    auto* presets = app.add_subcommand("presets", "List bundled scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            report(nmc::run_scenario(resolve(run_opts)));
        } else if (*sw) {
            for (const auto& rec : nmc::sweep(resolve(sweep_opts), axis, parse_values(values)))
                report(rec);
        } else if (*presets) {
            for (const auto& name : nmc::preset_names())
                std::cout << name << ' ' << nmc::scenario_to_json(nmc::preset(name)).dump() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
