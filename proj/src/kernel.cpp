#include "fractel/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace fractel {

namespace {

constexpr int max_gauss = 64;

std::vector<std::pair<double, double>> legendre_rule(int q)
{
    std::vector<std::pair<double, double>> out(q);
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = {-x, w};
        out[q - 1 - i] = {x, w};
    }
    if (q % 2 == 1)
        out[q / 2].first = 0.0;
    return out;
}

/// points needed for ~1e-16 accuracy when the nearest singularity sits r panel
/// lengths to the left of the panel
int points_for(double r)
{
    double c = 1.0 + 2.0 * r;
    double rb = c + std::sqrt(c * c - 1.0);
    int q = int(std::ceil(16.5 / std::log(rb)));
    return std::clamp(q, 2, 40);
}

} // namespace

const std::vector<std::pair<double, double>>& gauss_legendre(int q)
{
    static const auto rules = [] {
        std::array<std::vector<std::pair<double, double>>, max_gauss + 1> r;
        r[1] = {{0.0, 2.0}};
        for (int k = 2; k <= max_gauss; ++k)
            r[k] = legendre_rule(k);
        return r;
    }();
    if (q < 1 || q > max_gauss)
        throw InvalidParameter("Gauss-Legendre order out of range");
    return rules[q];
}

namespace {

MittagLeffler make_ml(double rho, double mu, double tol) { return MittagLeffler(rho, mu, tol); }

} // namespace

MLKernel::MLKernel(double rho, double beta, int gamma, cplx a, double tol)
    : rho_(rho), beta_(beta), a_(a), f0_(make_ml(rho, beta, tol)), f1_(make_ml(rho, beta + 1, tol)),
      f2_(make_ml(rho, beta + 2, tol))
{
    if (!(rho > 0.0) || !(rho < 1.0))
        throw InvalidParameter("kernel needs rho in (0, 1)");
    if (!(beta > 0.0))
        throw InvalidParameter("kernel needs beta > 0");
    if (gamma == 2) {
        f0_ = Prabhakar2(rho, beta, tol);
        f1_ = Prabhakar2(rho, beta + 1, tol);
        f2_ = Prabhakar2(rho, beta + 2, tol);
    } else if (gamma != 1) {
        throw InvalidParameter("kernel supports gamma = 1 or 2");
    }
    if (a != cplx(0.0) && std::abs(std::arg(a)) < rho * std::numbers::pi) {
        expo_ = true;
        expo_rate_ = std::pow(a, 1.0 / rho);
    }
}

cplx MLKernel::eval(const Fn& f, double s) const
{
    cplx z = a_ * std::pow(s, rho_);
    try {
        return std::visit([&](const auto& e) { return e(z).value; }, f);
    } catch (const NonConvergence& ex) {
        throw QuadratureFailure(std::string("kernel evaluation failed: ") + ex.what());
    }
}

cplx MLKernel::value(double s) const { return std::pow(s, beta_ - 1.0) * eval(f0_, s); }

cplx MLKernel::primitive(double s) const
{
    if (s <= 0.0)
        return 0.0;
    return std::pow(s, beta_) * eval(f1_, s);
}

cplx MLKernel::second_primitive(double s) const
{
    if (s <= 0.0)
        return 0.0;
    return std::pow(s, beta_ + 1.0) * eval(f2_, s);
}

int MLKernel::pieces(double s0, double s1) const
{
    if (!expo_ || expo_rate_.real() * s0 < -40.0)
        return 1;
    double omega = std::abs(expo_rate_) * (s1 - s0);
    return std::clamp(int(std::ceil(omega)), 1, 100000);
}

template <class F>
void MLKernel::for_nodes(double s0, double s1, F f) const
{
    const int np = pieces(s0, s1);
    const double len = (s1 - s0) / np;
    for (int p = 0; p < np; ++p) {
        double u0 = s0 + p * len;
        const auto& rule = gauss_legendre(points_for(u0 / len));
        double half = 0.5 * len, mid = u0 + half;
        for (const auto& [x, w] : rule) {
            double s = mid + half * x;
            f(s, (half * w) * value(s));
        }
    }
}

std::pair<cplx, cplx> MLKernel::hat_moments(double s0, double s1) const
{
    const double len = s1 - s0;
    if (!(len > 0.0))
        throw InvalidParameter("hat_moments needs s0 < s1");
    if (s0 <= 0.0) {
        cplx m0 = second_primitive(s1) / s1;
        return {m0, primitive(s1) - m0};
    }
    cplx m0 = 0.0, m1 = 0.0;
    for_nodes(s0, s1, [&](double s, cplx wk) {
        m0 += wk * ((s1 - s) / len);
        m1 += wk * ((s - s0) / len);
    });
    return {m0, m1};
}

cplx MLKernel::convolve(const Forcing& g, double t, const ConvolutionSpec& spec) const
{
    if (t <= 0.0 || g.is_zero())
        return 0.0;
    if (auto c = g.constant_value())
        return *c * primitive(t);

    if (const SampledTrajectory* tab = g.samples()) {
        // exact for the piecewise-linear interpolant of the table
        const double h = tab->grid.h();
        cplx acc = 0.0;
        double tau1 = t;
        int j = std::min(int(std::floor(t / h)), tab->grid.n);
        if (j * h >= t && j > 0)
            --j;
        for (; j >= 0; --j) {
            double tau0 = j * h;
            double s0 = t - tau1, s1 = t - tau0;
            if (s1 > s0) {
                auto [m0, m1] = hat_moments(s0, s1);
                acc += m0 * g(tau1) + m1 * g(tau0);
            }
            tau1 = tau0;
        }
        return acc;
    }

    // smooth callable: linear interpolation on a tiny first panel, Gauss-Legendre
    // on dyadic panels towards the singularity and uniform panels beyond
    const int n0 = std::max(1, spec.smooth_panels);
    const double coarse = t / n0;
    double first = coarse * std::ldexp(1.0, -spec.dyadic_levels);
    auto [m0, m1] = hat_moments(0.0, first);
    cplx acc = m0 * g(t) + m1 * g(t - first);
    auto add = [&](double s, cplx wk) { acc += wk * g(t - s); };
    for (double s0 = first; s0 < coarse * 0.75; s0 *= 2.0)
        for_nodes(s0, 2.0 * s0, add);
    for (int k = 1; k < n0; ++k)
        for_nodes(k * coarse, k + 1 == n0 ? t : (k + 1) * coarse, add);
    return acc;
}

std::vector<cplx> MLKernel::convolve_grid(std::span<const cplx> g, double h) const
{
    const int n = int(g.size()) - 1;
    std::vector<cplx> out(std::max(n + 1, 1), 0.0);
    if (n < 1)
        return out;
    std::vector<cplx> p(n + 2, 0.0), q(n + 2, 0.0);
    for (int m = 1; m <= n + 1; ++m) {
        auto [a, b] = hat_moments((m - 1) * h, m * h);
        q[m] = a;
        p[m] = b;
    }
    std::vector<cplx> w(n + 1);
    for (int d = 0; d <= n; ++d)
        w[d] = p[d] + q[d + 1];
    for (int i = 1; i <= n; ++i) {
        cplx acc = 0.0;
        for (int d = 0; d <= i; ++d)
            acc += w[d] * g[i - d];
        out[i] = acc - q[i + 1] * g[0];
    }
    return out;
}

cplx MLKernel::convolve_last(std::span<const cplx> g, double h) const
{
    const int n = int(g.size()) - 1;
    cplx acc = 0.0;
    for (int m = 1; m <= n; ++m) {
        auto [a, b] = hat_moments((m - 1) * h, m * h);
        acc += b * g[n - m] + a * g[n - m + 1];
    }
    return acc;
}

} // namespace fractel
