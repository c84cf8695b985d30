#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fractel/errors.hpp"

namespace fractel {

using cplx = std::complex<double>;

/// Uniform grid t_i = i T / n on [0, T].
struct TimeGrid {
    double T = 1.0;
    int n = 1;

    double h() const { return T / n; }
    double t(int i) const { return i == n ? T : i * (T / n); }
    void validate() const;
};

struct SampledTrajectory {
    TimeGrid grid;
    std::vector<cplx> values;

    void validate() const;
};

/// (m + 1)^p - m^p without cancellation for large m.
double power_step(double m, double p);

/// Riemann-Liouville integral of the given order by product integration
/// against the piecewise-linear interpolant of the samples.
SampledTrajectory frac_integral(const SampledTrajectory& traj, double order);

/// Same rule evaluated only at the last node of a uniform sample with spacing h.
cplx frac_integral_last(std::span<const cplx> values, double h, double order);

/// L1 Caputo derivative. The entry at t_0 is undefined and stored as NaN.
SampledTrajectory caputo_l1(const SampledTrajectory& traj, double rho);

/// max over nodes with t >= t_from_fraction * T of
/// |L1(dtraj) + 2 alpha dtraj + lambda traj - f|
double caputo_squared_residual(const SampledTrajectory& traj, const SampledTrajectory& dtraj,
                               double rho, double alpha, double lambda,
                               const SampledTrajectory& f_samples,
                               double t_from_fraction = 0.05);

/// Least-squares slope of log(err) against log(h).
double observed_order(std::span<const double> h, std::span<const double> err);

} // namespace fractel
