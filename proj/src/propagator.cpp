#include "nmc/propagator.hpp"

#include "nmc/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace nmc {

void ModelConfig::validate() const
{
    if (!(field_frequency > 0.0) || !std::isfinite(field_frequency))
        throw DomainError("model: field frequency must be > 0");
    if (!std::isfinite(coupling))
        throw DomainError("model: coupling kappa must be a finite real number");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw DomainError("model: dt must be > 0, got " + std::to_string(dt));
    if (!(t_max >= dt) || !std::isfinite(t_max))
        throw DomainError("model: t_max must be >= dt, got " + std::to_string(t_max));
    if (t_max / dt >= static_cast<double>(max_table_size))
        throw ResourceError("model: grid of " + std::to_string(t_max / dt) + " steps exceeds the memory budget");
}

std::size_t ModelConfig::steps() const
{
    return static_cast<std::size_t>(std::llround(t_max / dt));
}

namespace {

void require_finite(const cplx& z, std::size_t step)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw IntegrationError("propagator: non-finite amplitude at step " + std::to_string(step), step);
}

} // namespace

CenterAmplitude solve_center_amplitude(const ProductWeights& weights, const ModelConfig& cfg,
                                       kernels::Backend backend)
{
    cfg.validate();
    const std::size_t n = cfg.steps();
    if (weights.size() < n)
        throw UsageError("solve_center_amplitude: weight table has " + std::to_string(weights.size()) +
                         " samples, grid needs " + std::to_string(n));
    if (std::abs(weights.dt - cfg.dt) > 1e-12 * cfg.dt)
        throw UsageError("solve_center_amplitude: weight table step does not match the model grid");
    const double w = cfg.center_frequency();
    if (std::abs(weights.phase_rate - w) > 1e-12 * std::max(1.0, std::abs(w)))
        throw UsageError("solve_center_amplitude: weights must be rotated at omega_0 + kappa");

    const double dt = cfg.dt;
    const cplx w0 = weights.interior[0];

    std::vector<cplx> y(n + 1);
    std::vector<cplx> g(n + 1);
    y[0] = 1.0;
    g[0] = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
        const cplx history =
            kernels::history_sum(backend, weights.interior, std::span<const cplx>(y.data(), m), m) +
            weights.start[m - 1] * y[0];
        const cplx predicted = y[m - 1] + dt * g[m - 1];
        const cplx g_predicted = -2.0 * (history + w0 * predicted);
        y[m] = y[m - 1] + 0.5 * dt * (g[m - 1] + g_predicted);
        g[m] = -2.0 * (history + w0 * y[m]);
        require_finite(y[m], m);
    }

    CenterAmplitude out;
    out.s.resize(n + 1);
    out.sdot.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const cplx rot = std::polar(1.0, -w * cfg.time(k));
        out.s[k] = rot * y[k];
        out.sdot[k] = cplx(0.0, -w) * out.s[k] + rot * g[k];
    }
    return out;
}

CenterAmplitude solve_center_amplitude(const SpectralDensity& sd, const ModelConfig& cfg, kernels::Backend backend)
{
    cfg.validate();
    return solve_center_amplitude(build_product_weights(sd, cfg.dt, cfg.steps() + 1, cfg.center_frequency()), cfg,
                                  backend);
}

PropagatorTrajectory assemble_trajectory(const CenterAmplitude& amp, const ModelConfig& cfg)
{
    const std::size_t n = amp.s.size();
    if (amp.sdot.size() != n)
        throw UsageError("assemble_trajectory: s and sdot lengths differ");
    if (n != cfg.steps() + 1)
        throw UsageError("assemble_trajectory: sequence length " + std::to_string(n) +
                         " does not match the model grid of " + std::to_string(cfg.steps() + 1) + " points");

    PropagatorTrajectory traj;
    traj.dt = cfg.dt;
    traj.field_frequency = cfg.field_frequency;
    traj.coupling = cfg.coupling;
    traj.s = amp.s;
    traj.sdot = amp.sdot;
    traj.times.resize(n);
    traj.c.resize(n);
    traj.u.resize(n);
    traj.v.resize(n);
    const double wr = cfg.relative_frequency();
    for (std::size_t k = 0; k < n; ++k) {
        const double t = cfg.time(k);
        traj.times[k] = t;
        traj.c[k] = std::polar(1.0, -wr * t);
        traj.u[k] = 0.5 * (traj.c[k] + traj.s[k]);
        traj.v[k] = 0.5 * (traj.c[k] - traj.s[k]);
    }
    return traj;
}

namespace {

using Pair = std::array<cplx, 2>;

// exp(i kappa t sigma_x) applied to x: the beam-splitter part of the free (u, v) motion.
Pair mix(double kappa, double t, const Pair& x)
{
    const double co = std::cos(kappa * t);
    const cplx si(0.0, std::sin(kappa * t));
    return {co * x[0] + si * x[1], si * x[0] + co * x[1]};
}

} // namespace

DirectSolution solve_uv_direct(const SpectralDensity& sd, const ModelConfig& cfg)
{
    cfg.validate();
    const std::size_t n = cfg.steps();
    const double dt = cfg.dt;
    const double w0 = cfg.field_frequency;
    const double kappa = cfg.coupling;
    const ProductWeights weights = build_product_weights(sd, dt, n + 1, w0);
    const cplx k0 = weights.interior[0];

    // In the frame rotating at omega_0, (u, v) obey
    //   u' = i kappa v - D,  v' = i kappa u + D,
    //   D(t) = int_0^t mu(t - tau) e^{i w0 (t - tau)} (u - v)(tau) dtau,
    // and z = exp(-i kappa t sigma_x) (u, v) removes the mixing.
    auto rate = [kappa](double t, cplx memory) { return mix(kappa, -t, Pair{-memory, memory}); };

    std::vector<cplx> diff(n + 1);
    diff[0] = 1.0;
    Pair z{1.0, 0.0};
    Pair zdot{0.0, 0.0};

    DirectSolution out;
    out.u.resize(n + 1);
    out.v.resize(n + 1);
    out.u[0] = 1.0;
    out.v[0] = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
        const double t = cfg.time(m);
        const cplx history =
            kernels::history_sum_serial(weights.interior, std::span<const cplx>(diff.data(), m), m) +
            weights.start[m - 1] * diff[0];

        const Pair z_pred{z[0] + dt * zdot[0], z[1] + dt * zdot[1]};
        const Pair w_pred = mix(kappa, t, z_pred);
        const Pair zdot_pred = rate(t, history + k0 * (w_pred[0] - w_pred[1]));

        z = {z[0] + 0.5 * dt * (zdot[0] + zdot_pred[0]), z[1] + 0.5 * dt * (zdot[1] + zdot_pred[1])};
        const Pair w = mix(kappa, t, z);
        diff[m] = w[0] - w[1];
        zdot = rate(t, history + k0 * diff[m]);
        require_finite(diff[m], m);

        const cplx phase = std::polar(1.0, -w0 * t);
        out.u[m] = phase * w[0];
        out.v[m] = phase * w[1];
    }
    return out;
}

ConvergenceReport check_step_halving(const SpectralDensity& sd, const ModelConfig& cfg, const CenterAmplitude& fine,
                                     double threshold)
{
    ModelConfig coarse_cfg = cfg;
    coarse_cfg.dt = 2.0 * cfg.dt;
    ConvergenceReport report;
    report.coarse_dt = coarse_cfg.dt;
    if (coarse_cfg.t_max < coarse_cfg.dt)
        return report;
    const CenterAmplitude coarse = solve_center_amplitude(sd, coarse_cfg);
    const std::size_t shared = std::min(coarse.s.size(), (fine.s.size() + 1) / 2);
    for (std::size_t k = 0; k < shared; ++k)
        report.max_change = std::max(report.max_change, std::abs(fine.s[2 * k] - coarse.s[k]));
    // Second order: e(dt) ~ (s_dt - s_2dt) / 3.
    report.estimate = report.max_change / 3.0;
    report.passed = report.estimate < threshold;
    return report;
}

} // namespace nmc
