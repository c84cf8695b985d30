#pragma once

#include <functional>
#include <vector>

#include "fractel/mlfunc.hpp"
#include "fractel/verify.hpp"

namespace fractel::detail {

/// Mittag-Leffler values as seen by the estimate checks; the fault mode
/// multiplies each value by (1 + |z|).
class MLProbe {
public:
    MLProbe(double rho, double mu, bool fault, double tol = 1e-12)
        : f_(rho, mu, tol), fault_(fault)
    {
    }
    cplx operator()(cplx z) const
    {
        cplx v = f_(z).value;
        return fault_ ? v * (1.0 + std::abs(z)) : v;
    }

private:
    MittagLeffler f_;
    bool fault_;
};

std::vector<double> geomspace(double a, double b, int n);
std::vector<double> linspace(double a, double b, int n);

/// Slope of log y against log x over the points with the `count` largest x
/// (or smallest x when toward_zero), skipping non-positive y.
double tail_slope(const std::vector<double>& x, const std::vector<double>& y, int count,
                  bool toward_zero = false);

std::vector<Fixture> suite_fixtures(const SuiteConfig& cfg);
int capped(const SuiteConfig& cfg, int K);

using CheckFn = std::function<CheckReport(const SuiteConfig&)>;
CheckFn find_check(std::string_view id);

} // namespace fractel::detail
