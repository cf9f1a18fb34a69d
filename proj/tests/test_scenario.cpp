#include "nmc/error.hpp"
#include "nmc/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace nmc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / "nmc_test_scenario" / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string first_line(const fs::path& p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

std::vector<std::vector<double>> read_csv(const fs::path& p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double x = std::strtod(cell.c_str(), &end);
            row.push_back(end == cell.c_str() ? std::nan("") : x);
        }
        rows.push_back(row);
    }
    return rows;
}

Scenario short_scenario(const std::string& name)
{
    Scenario sc = preset("fig4");
    sc.model.t_max = 2.0;
    sc.output_directory = scratch(name);
    return sc;
}

std::string usage_message(const nlohmann::json& doc)
{
    try {
        (void)scenario_from_json(doc).validate();
    } catch (const UsageError& e) {
        return e.what();
    }
    return {};
}

// Self-consistent Markov shifts (tests/oracles/markov_limit.py).
constexpr double markov_shift_ohmic = 0.16478653008;
constexpr double markov_shift_super = 0.304597374377;

} // namespace

TEST_CASE("presets")
{
    CHECK(preset_names() == std::vector<std::string>{"fig1", "fig2", "fig3", "fig4"});
    for (const auto& name : preset_names()) {
        const auto sc = preset(name);
        CHECK_NOTHROW(sc.validate());
        CHECK(sc.spectral.coupling == 0.005);
        CHECK(sc.spectral.cutoff == 30.0);
        CHECK(sc.squeezing == 3.0);
        CHECK(sc.output_directory == fs::path(name));
    }
    CHECK(preset("fig3").model.coupling == 0.0);
    CHECK(preset("fig4").model.coupling == 0.5);
    CHECK_THROWS_AS(preset("fig5"), UsageError);
}

TEST_CASE("JSON scenarios")
{
    const auto sc = scenario_from_json(nlohmann::json::parse(
        R"({"n": 3, "eta": 0.01, "omega_c": 20, "kappa": 0.25, "r": 1.5, "t_max": 5, "dt": 0.002, "out": "x", "stride": 4})"));
    CHECK(sc.spectral.exponent == 3.0);
    CHECK(sc.spectral.coupling == 0.01);
    CHECK(sc.spectral.cutoff == 20.0);
    CHECK(sc.model.coupling == 0.25);
    CHECK(sc.squeezing == 1.5);
    CHECK(sc.model.t_max == 5.0);
    CHECK(sc.model.dt == 0.002);
    CHECK(sc.output_directory == fs::path("x"));
    CHECK(sc.stride == 4);
    CHECK(scenario_from_json(scenario_to_json(sc)).model.dt == sc.model.dt);
    CHECK(scenario_to_json(scenario_from_json(scenario_to_json(sc))) == scenario_to_json(sc));
}

TEST_CASE("JSON errors name the offending field")
{
    CHECK(usage_message(nlohmann::json::parse(R"({"dt": -1})")).find("scenario.dt") != std::string::npos);
    CHECK(usage_message(nlohmann::json::parse(R"({"eta": "big"})")).find("scenario.eta") != std::string::npos);
    CHECK(usage_message(nlohmann::json::parse(R"({"n": 0})")).find("scenario.n") != std::string::npos);
    CHECK(usage_message(nlohmann::json::parse(R"({"r": -2})")).find("scenario.r") != std::string::npos);
    CHECK(usage_message(nlohmann::json::parse(R"({"stride": 0})")).find("scenario.stride") != std::string::npos);
    CHECK(usage_message(nlohmann::json::parse(R"({"colour": 1})")).find("scenario.colour") != std::string::npos);
    CHECK(usage_message(nlohmann::json::parse(R"({"t_max": 1e-5})")).find("scenario.t_max") != std::string::npos);
    CHECK_THROWS_AS(scenario_from_json(nlohmann::json::array()), UsageError);
}

TEST_CASE("run writes the documented artifacts")
{
    auto sc = short_scenario("artifacts");
    const auto rec = run_scenario(sc);
    CHECK(first_line(sc.output_directory / "coefficients.csv") == "t,delta_omega,gamma");
    CHECK(first_line(sc.output_directory / "negativity.csv") == "t,e_n,nu_min");
    CHECK(first_line(sc.output_directory / "propagator.csv") == "t,re_u,im_u,re_v,im_v,abs_s");
    CHECK(rec.artifacts.size() == 4);

    const auto neg = read_csv(sc.output_directory / "negativity.csv");
    REQUIRE(neg.size() == 201);
    CHECK(neg[0][1] == doctest::Approx(6.0 / std::numbers::ln2).epsilon(1e-10));
    CHECK(neg[1][0] == doctest::Approx(0.01));
    for (const auto& row : neg)
        CHECK(row[2] >= 0.5 - 1e-9);

    std::ifstream in(sc.output_directory / "run.json");
    const auto meta = nlohmann::json::parse(in);
    CHECK(meta["format_version"] == run_format_version);
    CHECK(meta["scenario"]["kappa"] == 0.5);
    CHECK(meta["diagnostics"]["convergence"].contains("estimate"));
    CHECK(meta["diagnostics"]["convergence"]["coarse_dt"] == 2e-3);
    CHECK(meta["diagnostics"]["saturation_time"].is_null());
    CHECK(meta["summary"]["final_e_n"].get<double>() == doctest::Approx(rec.final_e_n));
    CHECK(meta["artifacts"].size() == 4);
    CHECK(meta["warnings"].is_array());
}

TEST_CASE("repeated runs are byte-identical")
{
    auto a = short_scenario("det_a");
    auto b = short_scenario("det_b");
    a.spectral = SpectralDensity::sub_ohmic(0.005, 30.0);
    b.spectral = a.spectral;
    run_scenario(a);
    run_scenario(b);
    for (const char* f : {"coefficients.csv", "negativity.csv", "propagator.csv"}) {
        CAPTURE(f);
        CHECK(slurp(a.output_directory / f) == slurp(b.output_directory / f));
    }
}

TEST_CASE("fig3-style run starts at the initial entanglement")
{
    auto sc = preset("fig3");
    sc.model.t_max = 1.0;
    sc.output_directory = scratch("fig3");
    run_scenario(sc);
    const auto neg = read_csv(sc.output_directory / "negativity.csv");
    CHECK(std::abs(neg[0][1] - 8.65617) < 1e-4);
}

TEST_CASE("unwritable output directory is an error")
{
    const auto blocker = scratch("blocker");
    fs::create_directories(blocker.parent_path());
    std::ofstream(blocker) << "file";
    auto sc = short_scenario("unused");
    sc.output_directory = blocker / "sub";
    CHECK_THROWS_AS(run_scenario(sc), std::runtime_error);
}

TEST_CASE("sweep over squeezing zero gives no entanglement")
{
    auto base = short_scenario("sweep_r");
    const auto recs = sweep(base, "r", {0.0});
    REQUIRE(recs.size() == 1);
    for (const auto& row : read_csv(base.output_directory / "r_0" / "negativity.csv"))
        CHECK(row[1] == 0.0);
    CHECK(first_line(base.output_directory / "index.csv") == "r,final_e_n,asymptotic_delta_omega,directory");
    const auto index = read_csv(base.output_directory / "index.csv");
    REQUIRE(index.size() == 1);
    CHECK(index[0][0] == 0.0);
    CHECK(index[0][1] == 0.0);
}

TEST_CASE("sweep over zero coupling gives no decay")
{
    auto base = short_scenario("sweep_eta");
    sweep(base, "eta", {0.0});
    for (const auto& row : read_csv(base.output_directory / "eta_0" / "coefficients.csv")) {
        CHECK(row[2] == 0.0);
        CHECK(std::abs(row[1]) < 1e-12);
    }
}

TEST_CASE("sweep rejects an unknown axis before doing any work")
{
    auto base = short_scenario("sweep_bad");
    CHECK_THROWS_AS(sweep(base, "colour", {1.0}), UsageError);
    CHECK_FALSE(fs::exists(base.output_directory));
}

TEST_CASE("sweep over the spectral exponent records the asymptotic shift")
{
    auto base = preset("fig1");
    base.output_directory = scratch("sweep_n");
    base.stride = 100;
    const auto recs = sweep(base, "n", {1.0, 3.0});
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].asymptotic_delta_omega == doctest::Approx(markov_shift_ohmic).epsilon(0.01));
    CHECK(recs[1].asymptotic_delta_omega == doctest::Approx(markov_shift_super).epsilon(0.01));
    const auto index = read_csv(base.output_directory / "index.csv");
    REQUIRE(index.size() == 2);
    CHECK(index[1][0] == 3.0);
    CHECK(index[1][2] == doctest::Approx(recs[1].asymptotic_delta_omega).epsilon(1e-10));
}

TEST_CASE("number formatting")
{
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1e-3) == "0.001");
    CHECK(format_number(8.656170245333780444) == "8.65617024533");
}
