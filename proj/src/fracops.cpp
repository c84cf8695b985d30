#include "fractel/fracops.hpp"

#include <cmath>
#include <limits>

namespace fractel {

void TimeGrid::validate() const
{
    if (!(T > 0.0) || !std::isfinite(T))
        throw InvalidParameter("time grid: T must be positive");
    if (n < 1)
        throw InvalidParameter("time grid: n must be at least 1");
}

void SampledTrajectory::validate() const
{
    grid.validate();
    if (values.size() != std::size_t(grid.n) + 1)
        throw GridMismatch("trajectory length does not match its grid");
}

double power_step(double m, double p)
{
    if (m == 0.0)
        return 1.0;
    return std::pow(m, p) * std::expm1(p * std::log1p(1.0 / m));
}

namespace {

void check_order(double order)
{
    if (!(order > 0.0) || !(order < 2.0))
        throw InvalidOrder("fractional integral order must lie in (0, 2)");
}

/// J^a at node n is h^a / Gamma(a + 2) * sum_j w_j v_j, with end weight
/// (n - 1)^p - (n - 1 - a) n^a and interior weights the second differences of m^p
double end_weight(int n, double p)
{
    double a = p - 1.0;
    double nm1 = n - 1.0;
    return std::pow(nm1, p) - (nm1 - a) * std::pow(double(n), a);
}

double interior_weight(int m, double p)
{
    return power_step(m, p) - power_step(m - 1.0, p);
}

} // namespace

cplx frac_integral_last(std::span<const cplx> values, double h, double order)
{
    check_order(order);
    const int n = int(values.size()) - 1;
    if (n < 1)
        return 0.0;
    const double p = order + 1.0;
    cplx acc = end_weight(n, p) * values[0];
    for (int j = 1; j < n; ++j)
        acc += interior_weight(n - j, p) * values[j];
    acc += values[n];
    return acc * (std::pow(h, order) / std::tgamma(order + 2.0));
}

SampledTrajectory frac_integral(const SampledTrajectory& traj, double order)
{
    check_order(order);
    traj.validate();
    const int n = traj.grid.n;
    const double p = order + 1.0;
    const double scale = std::pow(traj.grid.h(), order) / std::tgamma(order + 2.0);
    std::vector<double> w(n + 1);
    for (int m = 1; m <= n; ++m)
        w[m] = interior_weight(m, p);

    SampledTrajectory out{traj.grid, std::vector<cplx>(n + 1, 0.0)};
    const auto& v = traj.values;
    for (int i = 1; i <= n; ++i) {
        cplx acc = end_weight(i, p) * v[0];
        for (int j = 1; j < i; ++j)
            acc += w[i - j] * v[j];
        acc += v[i];
        out.values[i] = acc * scale;
    }
    return out;
}

SampledTrajectory caputo_l1(const SampledTrajectory& traj, double rho)
{
    if (!(rho > 0.0) || !(rho < 1.0))
        throw InvalidOrder("L1 scheme needs rho in (0, 1)");
    traj.validate();
    const int n = traj.grid.n;
    if (n < 2)
        throw GridTooCoarse("L1 scheme needs at least two intervals");
    std::vector<double> b(n);
    for (int m = 0; m < n; ++m)
        b[m] = power_step(m, 1.0 - rho);
    std::vector<cplx> dv(n);
    for (int j = 0; j < n; ++j)
        dv[j] = traj.values[j + 1] - traj.values[j];

    const double scale = std::pow(traj.grid.h(), -rho) / std::tgamma(2.0 - rho);
    SampledTrajectory out{traj.grid, std::vector<cplx>(n + 1)};
    out.values[0] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    for (int i = 1; i <= n; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < i; ++j)
            acc += b[i - j - 1] * dv[j];
        out.values[i] = acc * scale;
    }
    return out;
}

double caputo_squared_residual(const SampledTrajectory& traj, const SampledTrajectory& dtraj,
                               double rho, double alpha, double lambda,
                               const SampledTrajectory& f_samples, double t_from_fraction)
{
    traj.validate();
    dtraj.validate();
    f_samples.validate();
    auto same = [](const TimeGrid& a, const TimeGrid& b) { return a.n == b.n && a.T == b.T; };
    if (!same(traj.grid, dtraj.grid) || !same(traj.grid, f_samples.grid))
        throw GridMismatch("residual: trajectories live on different grids");
    SampledTrajectory d2 = caputo_l1(dtraj, rho);
    double worst = 0.0;
    const int n = traj.grid.n;
    for (int i = 1; i <= n; ++i) {
        if (traj.grid.t(i) < t_from_fraction * traj.grid.T)
            continue;
        cplx r = d2.values[i] + 2.0 * alpha * dtraj.values[i] + lambda * traj.values[i] -
                 f_samples.values[i];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double observed_order(std::span<const double> h, std::span<const double> err)
{
    if (h.size() != err.size() || h.size() < 2)
        throw InvalidParameter("observed_order needs matching samples");
    double n = double(h.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace fractel
