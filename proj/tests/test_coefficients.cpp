#include "nmc/coefficients.hpp"
#include "nmc/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace nmc;

namespace {

const SpectralDensity ohm = SpectralDensity::ohmic(0.005, 30.0);
const SpectralDensity sub = SpectralDensity::sub_ohmic(0.005, 30.0);
const SpectralDensity super = SpectralDensity::super_ohmic(0.005, 30.0);

// Self-consistent Markov limit (tests/oracles/markov_limit.py).
constexpr double markov_shift_ohmic = 0.16478653008;
constexpr double markov_shift_sub = 0.248480708086;
constexpr double markov_shift_super = 0.304597374377;

PropagatorTrajectory run(const SpectralDensity& sd, double t_max, double kappa = 0.5)
{
    const ModelConfig cfg{1.0, kappa, t_max, 1e-3};
    return assemble_trajectory(solve_center_amplitude(sd, cfg), cfg);
}

double window_mean_shift(const std::vector<FrequencyShift>& shifts, const PropagatorTrajectory& traj, double t0,
                         double t1)
{
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < traj.size(); ++k)
        if (traj.times[k] >= t0 && traj.times[k] <= t1) {
            sum += shifts[k].delta_omega;
            ++count;
        }
    return sum / static_cast<double>(count);
}

} // namespace

TEST_CASE("no bath gives bare coefficients")
{
    for (double kappa : {0.0, 0.5}) {
        const auto traj = run(SpectralDensity{1.0, 0.0, 30.0}, 10.0, kappa);
        const auto mc = master_coefficients(traj);
        const auto shifts = frequency_shifts(mc, 1.0, kappa);
        for (std::size_t k = 0; k < mc.size(); ++k) {
            CHECK(std::abs(mc[k].gamma) < 1e-12);
            CHECK(std::abs(mc[k].omega - 1.0) < 1e-12);
            CHECK(std::abs(mc[k].omega_prime - kappa) < 1e-12);
            CHECK(std::abs(shifts[k].delta_omega) < 1e-12);
            CHECK_FALSE(mc[k].saturated);
        }
    }
}

TEST_CASE("initial coefficients are bare for every bath")
{
    for (const auto& sd : {ohm, sub, super}) {
        const auto mc = master_coefficients(run(sd, 0.5));
        CHECK(mc[0].t == 0.0);
        CHECK(std::abs(mc[0].gamma) < 1e-15);
        CHECK(std::abs(mc[0].omega - 1.0) < 1e-15);
        CHECK(std::abs(mc[0].omega_prime - 0.5) < 1e-15);
    }
}

TEST_CASE("individual and correlated coefficients coincide")
{
    for (const auto& sd : {ohm, sub, super}) {
        const auto mc = master_coefficients(run(sd, 20.0));
        const auto shifts = frequency_shifts(mc, 1.0, 0.5);
        double dg = 0.0, dw = 0.0;
        for (std::size_t k = 0; k < mc.size(); ++k) {
            dg = std::max(dg, std::abs(mc[k].gamma - mc[k].gamma_prime));
            dw = std::max(dw, std::abs(shifts[k].delta_omega - shifts[k].delta_omega_prime));
        }
        CHECK(dg == 0.0);
        // Both shifts come from the same sample; they differ only by the rounding of omega_0 -/+ kappa.
        CHECK(dw < 1e-14);
    }
}

TEST_CASE("coefficients rise from zero on the cutoff time scale")
{
    const double tau1 = 1.0 / 30.0;
    const auto traj = run(ohm, 1.0);
    const auto mc = master_coefficients(traj);
    const auto shifts = frequency_shifts(mc, 1.0, 0.5);
    const auto at = [&](double t) { return static_cast<std::size_t>(std::llround(t / 1e-3)); };
    CHECK(mc[at(3 * tau1)].gamma > markov_shift_ohmic * 0.1);
    CHECK(shifts[at(3 * tau1)].delta_omega > 0.5 * markov_shift_ohmic);
    // Before tau1 / 10 neither has built up.
    CHECK(mc[at(tau1 / 10)].gamma < 0.2 * mc[at(tau1)].gamma);
    CHECK(shifts[at(tau1 / 10)].delta_omega < 0.05 * shifts[at(3 * tau1)].delta_omega);
}

TEST_CASE("long-time shifts approach the self-consistent Markov values")
{
    {
        const auto traj = run(ohm, 50.0);
        const auto shifts = frequency_shifts(master_coefficients(traj), 1.0, 0.5);
        CHECK(window_mean_shift(shifts, traj, 40.0, 50.0) == doctest::Approx(markov_shift_ohmic).epsilon(0.01));
    }
    {
        const auto traj = run(super, 20.0);
        const auto shifts = frequency_shifts(master_coefficients(traj), 1.0, 0.5);
        CHECK(window_mean_shift(shifts, traj, 10.0, 20.0) == doctest::Approx(markov_shift_super).epsilon(0.01));
    }
    {
        const auto traj = run(sub, 30.0);
        const auto shifts = frequency_shifts(master_coefficients(traj), 1.0, 0.5);
        CHECK(window_mean_shift(shifts, traj, 10.0, 25.0) == doctest::Approx(markov_shift_sub).epsilon(0.05));
    }
}

TEST_CASE("saturated samples carry the last valid values")
{
    PropagatorTrajectory traj;
    traj.field_frequency = 1.0;
    traj.coupling = 0.5;
    traj.dt = 1.0;
    traj.times = {0.0, 1.0, 2.0, 3.0};
    traj.s = {1.0, 0.5, 1e-13, 0.0};
    traj.sdot = {cplx(0.0, -1.5), cplx(-0.1, -0.8), cplx(5.0, 5.0), 0.0};
    const auto mc = master_coefficients(traj);
    CHECK_FALSE(mc[1].saturated);
    CHECK(mc[1].gamma == doctest::Approx(0.1));
    CHECK(mc[1].omega == doctest::Approx(0.8 + 0.25));
    CHECK(mc[1].omega_prime == doctest::Approx(0.8 - 0.25));
    for (std::size_t k : {2u, 3u}) {
        CHECK(mc[k].saturated);
        CHECK(mc[k].t == traj.times[k]);
        CHECK(mc[k].gamma == mc[1].gamma);
        CHECK(mc[k].omega == mc[1].omega);
    }
    CHECK(saturation_time(mc) == 2.0);
    CHECK(saturation_time(master_coefficients(run(ohm, 1.0))) < 0.0);
}

TEST_CASE("trajectory without sdot is a usage error")
{
    auto traj = run(ohm, 0.1);
    traj.sdot.clear();
    CHECK_THROWS_AS(master_coefficients(traj), UsageError);
}
