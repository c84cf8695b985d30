#include "doctest.h"

#include <cmath>
#include <vector>

#include "fractel/fracops.hpp"
#include "fractel/mlfunc.hpp"

using namespace fractel;

namespace {

SampledTrajectory sample(double T, int n, auto f)
{
    SampledTrajectory s{{T, n}, std::vector<cplx>(n + 1)};
    for (int i = 0; i <= n; ++i)
        s.values[i] = f(s.grid.t(i));
    return s;
}

} // namespace

TEST_CASE("fractional integral closed forms")
{
    auto one = sample(2.0, 50, [](double) { return cplx(1.0); });
    auto j = frac_integral(one, 0.3);
    for (int i = 0; i <= 50; ++i)
        CHECK(j.values[i].real() ==
              doctest::Approx(std::pow(j.grid.t(i), 0.3) / std::tgamma(1.3)).epsilon(1e-13));

    auto zero = sample(1.0, 10, [](double) { return cplx(0.0); });
    for (cplx v : frac_integral(zero, 0.7).values)
        CHECK(v == cplx(0.0));

    auto lin = sample(1.0, 40, [](double t) { return cplx(t); });
    CHECK(frac_integral(lin, 0.5).values.back().real() ==
          doctest::Approx(4.0 / (3.0 * std::sqrt(M_PI))).epsilon(1e-13));
    CHECK(frac_integral_last(lin.values, lin.grid.h(), 0.5).real() ==
          doctest::Approx(4.0 / (3.0 * std::sqrt(M_PI))).epsilon(1e-13));
    CHECK_THROWS_AS(frac_integral(lin, 0.0), InvalidOrder);
    CHECK_THROWS_AS(frac_integral(lin, 2.0), InvalidOrder);
}

TEST_CASE("fractional integral is second order and a semigroup")
{
    auto f = [](double t) { return cplx(t * t * std::cos(3.0 * t)); };
    std::vector<double> hs, errs;
    for (int n : {64, 128, 256}) {
        auto s = sample(1.0, n, f);
        auto ab = frac_integral(frac_integral(s, 0.4), 0.35);
        auto direct = frac_integral(s, 0.75);
        double e = 0.0;
        for (int i = 0; i <= n; ++i)
            e = std::max(e, std::abs(ab.values[i] - direct.values[i]));
        hs.push_back(1.0 / n);
        errs.push_back(e);
    }
    CHECK(errs.back() < 1e-4);
    CHECK(observed_order(hs, errs) > 1.8);
}

TEST_CASE("L1 scheme basics")
{
    auto lin = sample(1.0, 100, [](double t) { return cplx(t); });
    auto d = caputo_l1(lin, 0.5);
    CHECK(std::isnan(d.values[0].real()));
    CHECK(d.values.back().real() == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-13));

    auto c = sample(1.0, 20, [](double) { return cplx(3.5); });
    for (int i = 1; i <= 20; ++i)
        CHECK(caputo_l1(c, 0.4).values[i] == cplx(0.0));

    CHECK_THROWS_AS(caputo_l1(lin, 1.0), InvalidOrder);
    CHECK_THROWS_AS(caputo_l1(sample(1.0, 1, [](double t) { return cplx(t); }), 0.5), GridTooCoarse);
}

TEST_CASE("L1 left-inverts the fractional integral")
{
    auto f = [](double t) { return cplx(t * std::exp(-t)); };
    auto s = sample(1.0, 400, f);
    auto back = caputo_l1(frac_integral(s, 0.6), 0.6);
    double e = 0.0;
    for (int i = 20; i <= 400; ++i)
        e = std::max(e, std::abs(back.values[i] - s.values[i]));
    CHECK(e < 2e-3);
}

TEST_CASE("L1 on the eigenfunction of the Caputo derivative")
{
    MittagLeffler e(0.5, 1.0);
    std::vector<double> hs, errs;
    for (int n : {100, 1000}) {
        auto s = sample(1.0, n, [&](double t) { return e(-std::sqrt(t)).value; });
        auto d = caputo_l1(s, 0.5);
        double err = 0.0;
        for (int i = 1; i <= n; ++i)
            if (s.grid.t(i) >= 0.05)
                err = std::max(err, std::abs(d.values[i] + s.values[i]));
        hs.push_back(1.0 / n);
        errs.push_back(err);
    }
    CHECK(errs.back() < 1e-3);
    CHECK(observed_order(hs, errs) > 1.4);
}

TEST_CASE("residual helper")
{
    auto z = sample(1.0, 50, [](double) { return cplx(0.0); });
    CHECK(caputo_squared_residual(z, z, 0.5, 1.0, 1.0, z) == 0.0);
    auto other = sample(1.0, 60, [](double) { return cplx(0.0); });
    CHECK_THROWS_AS(caputo_squared_residual(z, other, 0.5, 1.0, 1.0, z), GridMismatch);
}

TEST_CASE("power_step is accurate for large arguments")
{
    double m = 1e7, p = 0.3;
    double expect = p * std::pow(m, p - 1) * (1 + (p - 1) / (2 * m));
    CHECK(power_step(m, p) == doctest::Approx(expect).epsilon(1e-12));
}
