#include "doctest.h"

#include <cmath>

#include "fractel/laplace.hpp"
#include "fractel/scalar_solver.hpp"

using namespace fractel;

namespace {

ScalarProblem base(double rho, double alpha, double lambda, cplx phi0, cplx phi1)
{
    ScalarProblem p;
    p.rho = rho;
    p.alpha = alpha;
    p.lambda = lambda;
    p.phi0 = phi0;
    p.phi1 = phi1;
    p.T = 1.0;
    return p;
}

Forcing exp_forcing(ExpForcing e)
{
    return Forcing::callable([e](double t) { return e(t); },
                             e.a.imag() == 0.0 && e.b.imag() == 0.0);
}

} // namespace

TEST_CASE("case classification")
{
    CHECK(classify_case(1.0, 1.0) == CaseTag::critical);
    CHECK(classify_case(1.0, 2.0) == CaseTag::distinct);
    CHECK(classify_case(1.0, 1.0 + 1e-12) == CaseTag::critical);
    CHECK(classify_case(1.0, 1.0 + 1e-6) == CaseTag::distinct);
}

TEST_CASE("frozen scalar values")
{
    auto d = solve_scalar_distinct(base(0.5, 1.0, 4.0, 0.0, 1.0));
    CHECK(d.y(1.0).real() == doctest::Approx(0.30863733028686500174).epsilon(1e-10));
    CHECK(d.y(1.0).imag() == 0.0);

    auto c1 = solve_scalar_critical(base(0.5, 1.0, 1.0, 0.0, 1.0));
    CHECK(c1.y(1.0).real() == doctest::Approx(0.70079559093970556949).epsilon(1e-10));

    auto c0 = solve_scalar_critical(base(0.5, 1.0, 1.0, 1.0, 0.0));
    CHECK(c0.y(1.0).real() == doctest::Approx(0.27321201478389856507).epsilon(1e-10));
    CHECK(c0.dy_rho(1.0).real() == doctest::Approx(0.15437156137190843934).epsilon(1e-10));

    auto pg = base(0.5, 1.0, 1.0, 0.0, 0.0);
    pg.g = Forcing::constant(1.0);
    auto cg = solve_scalar_critical(pg);
    CHECK(cg.y(1.0).real() == doctest::Approx(0.29920440906029443051).epsilon(1e-10));

    ExpForcing e{0.3, 0.7, 1.5};
    auto pf = base(0.75, 0.5, 2.0, -0.4, 1.1);
    pf.g = exp_forcing(e);
    auto f = solve_scalar(pf);
    CHECK(f.case_tag() == CaseTag::distinct);
    CHECK(f.y(0.25).real() == doctest::Approx(0.8901956726160967896).epsilon(1e-10));
    CHECK(f.y(1.0).real() == doctest::Approx(0.44847137017956242136).epsilon(1e-10));
    CHECK(f.dy_rho(1.0).real() == doctest::Approx(-0.5657055774009927773).epsilon(1e-10));
}

TEST_CASE("laplace oracle reproduces the frozen values")
{
    ModalLaplace a(0.5, 1.0, 4.0, 0.0, 1.0, {});
    CHECK(std::abs(a.y(1.0).value - 0.30863733028686500174) < 1e-9);
    ModalLaplace b(0.5, 1.0, 1.0, 1.0, 0.0, {});
    CHECK(std::abs(b.dy_rho(1.0).value - 0.15437156137190843934) < 1e-9);
    ModalLaplace c(0.75, 0.5, 2.0, -0.4, 1.1, {0.3, 0.7, 1.5});
    CHECK(c.poles().size() == 2);
    CHECK(std::abs(c.y(0.25).value - 0.8901956726160967896) < 1e-9);
    CHECK(std::abs(c.dy_rho(1.0).value + 0.5657055774009927773) < 1e-9);
}

TEST_CASE("solver agrees with the laplace oracle across regimes")
{
    struct Row {
        double rho, alpha, lambda;
    };
    const Row rows[] = {{0.25, 2.0, 1.0}, {0.5, 0.5, 30.0}, {0.9, 1.0, 200.0}, {0.75, 2.0, 4.0},
                        {0.9, 0.5, 0.25}, {0.3, 1.0, 900.0}};
    ExpForcing e{0.2, -0.5, 0.8};
    for (const auto& r : rows) {
        auto p = base(r.rho, r.alpha, r.lambda, 0.7, -0.3);
        p.g = exp_forcing(e);
        p.T = 2.0;
        auto s = solve_scalar(p);
        ModalLaplace lap(r.rho, r.alpha, r.lambda, 0.7, -0.3, e);
        for (double t : {0.05, 0.4, 1.3, 2.0}) {
            CAPTURE(r.rho);
            CAPTURE(r.lambda);
            CAPTURE(t);
            auto ly = lap.y(t);
            auto ld = lap.dy_rho(t);
            CHECK(ly.est_error < 1e-8);
            CHECK(std::abs(s.y(t) - ly.value) < 1e-8);
            CHECK(std::abs(s.dy_rho(t) - ld.value) < 1e-8);
        }
    }
}

TEST_CASE("zero data gives the zero solution")
{
    auto s = solve_scalar(base(0.5, 1.0, 3.0, 0.0, 0.0));
    for (double t : {0.0, 0.3, 1.0})
        CHECK(s.y(t) == cplx(0.0));
    CHECK(s.dy_rho(0.5) == cplx(0.0));
    auto c = solve_scalar(base(0.5, 1.0, 1.0, 0.0, 0.0));
    CHECK(c.y(0.7) == cplx(0.0));
    CHECK(c.dy_rho(0.7) == cplx(0.0));
}

TEST_CASE("initial conditions")
{
    for (double lambda : {0.5, 1.0, 4.0}) {
        auto p = base(0.5, 1.0, lambda, -0.6, 1.3);
        p.g = Forcing::constant(0.4);
        auto s = solve_scalar(p);
        CAPTURE(lambda);
        CHECK(s.y(0.0) == cplx(1.3));
        // D^rho y - phi0 ~ (g(0) - 2 alpha phi0 - lambda phi1) t^rho / Gamma(1 + rho)
        const double c = 0.4 + 1.2 - lambda * 1.3;
        for (double t : {1e-4, 1e-5, 1e-6}) {
            cplx lead = c * std::sqrt(t) / std::tgamma(1.5);
            CHECK(std::abs(s.dy_rho(t) - cplx(-0.6) - lead) < 0.05 * std::abs(lead));
        }
    }
    auto s = solve_scalar(base(0.5, 1.0, 4.0, 0.0, 1.0));
    CHECK_THROWS_AS(s.dy_rho(0.0), EvaluationOutOfDomain);
    CHECK_THROWS_AS(s.y(1.5), EvaluationOutOfDomain);
}

TEST_CASE("case continuity around the critical eigenvalue")
{
    for (double rho : {0.5, 0.9}) {
        auto crit = solve_scalar_critical(base(rho, 1.5, 2.25, 0.8, -0.5));
        for (double rel : {1e-6, -1e-6}) {
            auto near = solve_scalar_distinct(base(rho, 1.5, 2.25 * (1 + rel), 0.8, -0.5));
            for (double t : {0.0, 0.1, 0.5, 1.0})
                CHECK(std::abs(near.y(t) - crit.y(t)) < 1e-5);
        }
    }
    // inside the critical tolerance the distinct formula still agrees
    auto crit = solve_scalar_critical(base(0.5, 1.0, 1.0, 0.0, 1.0));
    auto forced = solve_scalar_distinct(base(0.5, 1.0, 1.0 + 1e-12, 0.0, 1.0), {}, 0.0);
    CHECK(std::abs(forced.y(1.0) - crit.y(1.0)) < 1e-6);
    CHECK_THROWS_AS(solve_scalar_distinct(base(0.5, 1.0, 1.0, 0.0, 1.0)), CaseMismatch);
    CHECK_THROWS_AS(solve_scalar_critical(base(0.5, 1.0, 2.0, 0.0, 1.0)), CaseMismatch);
}

TEST_CASE("real data stays real")
{
    auto p = base(0.9, 0.5, 50.0, 1.0, -2.0);
    p.g = Forcing::callable([](double t) { return cplx(std::sin(t)); }, true);
    auto s = solve_scalar(p);
    for (double t : {0.01, 0.3, 0.99}) {
        CHECK(s.y(t).imag() == 0.0);
        CHECK(s.dy_rho(t).imag() == 0.0);
    }
}

TEST_CASE("grid samples match pointwise evaluation")
{
    auto p = base(0.6, 1.0, 1.0, 0.3, 0.9);
    p.g = Forcing::constant(-0.2);
    auto s = solve_scalar(p);
    auto smp = s.sample(20);
    for (int i = 1; i <= 20; i += 7) {
        CHECK(std::abs(smp.y[i] - s.y(smp.grid.t(i))) < 1e-12);
        CHECK(std::abs(smp.dy[i] - s.dy_rho(smp.grid.t(i))) < 1e-9);
    }
}

TEST_CASE("critical derivative matches the single-kernel form")
{
    // the g-part of D^rho y is also t^{rho-1} E^2_{rho,rho}(-alpha t^rho) * g
    double rho = 0.7, alpha = 0.8;
    auto g = Forcing::callable([](double t) { return cplx(std::cos(2.0 * t)); }, true);
    auto p = base(rho, alpha, alpha * alpha, 0.0, 0.0);
    p.g = g;
    auto s = solve_scalar_critical(p);
    MLKernel k(rho, rho, 2, -alpha);
    for (double t : {0.2, 1.0})
        CHECK(std::abs(s.dy_rho(t) - k.convolve(g, t)) < 1e-10);
}

TEST_CASE("equation residual converges under the L1 oracle")
{
    ExpForcing e{0.3, 0.7, 1.5};
    for (double lambda : {2.0, 1.0}) {
        auto p = base(0.5, 1.0, lambda, 0.0, 1.0);
        p.g = exp_forcing(e);
        auto s = solve_scalar(p);
        std::vector<double> hs, rs;
        for (int n : {100, 300, 1000}) {
            auto smp = s.sample(n);
            SampledTrajectory f{smp.grid, p.g.sample(smp.grid)};
            rs.push_back(caputo_squared_residual(smp.y_traj(), smp.dy_traj(), p.rho, p.alpha,
                                                 p.lambda, f));
            hs.push_back(1.0 / n);
        }
        CAPTURE(lambda);
        CHECK(rs.back() < 1e-3);
        CHECK(observed_order(hs, rs) > 1.4);
    }
}

TEST_CASE("relaxation and integro building blocks")
{
    auto u0 = solve_relaxation(0.5, 0.0, Forcing::constant(1.0), 2.0);
    CHECK(u0(1.5).real() == doctest::Approx(std::pow(1.5, 0.5) / std::tgamma(1.5)).epsilon(1e-13));
    auto uz = solve_relaxation(0.5, 1.0, Forcing::zero(), 1.0);
    CHECK(uz(0.7) == cplx(0.0));
    auto um = solve_relaxation(0.5, -1.0, Forcing::callable([](double) { return cplx(1.0); }), 1.0);
    CHECK(um(1.0).real() == doctest::Approx(1.0 - ml(0.5, 1.0, -1.0).value.real()).epsilon(1e-11));

    auto w0 = solve_integro(0.4, 0.0, Forcing::constant(1.0), 1.0);
    CHECK(w0(0.8).real() == doctest::Approx(std::pow(0.8, 0.8) / std::tgamma(1.8)).epsilon(1e-12));
    CHECK(solve_integro(0.5, 1.0, Forcing::zero(), 1.0)(0.5) == cplx(0.0));
}

TEST_CASE("integro solution satisfies its equation")
{
    double rho = 0.5, alpha = 1.0;
    auto u = solve_integro(rho, alpha, Forcing::constant(1.0), 1.0);
    std::vector<double> hs, rs;
    for (int n : {200, 800}) {
        auto traj = u.sample(n);
        auto d = caputo_l1(traj, rho);
        auto ju = frac_integral(traj, rho);
        double worst = 0.0;
        for (int i = 1; i <= n; ++i) {
            double t = traj.grid.t(i);
            if (t < 0.05)
                continue;
            cplx rhs = std::pow(t, rho) / std::tgamma(1.0 + rho);
            worst = std::max(worst, std::abs(d.values[i] + 2 * alpha * traj.values[i] +
                                             alpha * alpha * ju.values[i] - rhs));
        }
        hs.push_back(1.0 / n);
        rs.push_back(worst);
    }
    CHECK(rs.back() < 1e-3);
    CHECK(observed_order(hs, rs) > 1.3);
}

TEST_CASE("relaxation solution satisfies its equation")
{
    double rho = 0.3;
    cplx lam(-2.0, 1.0);
    auto f = Forcing::callable([](double t) { return cplx(1.0 + t); });
    auto u = solve_relaxation(rho, lam, f, 1.0);
    auto traj = u.sample(1000);
    auto d = caputo_l1(traj, rho);
    double worst = 0.0;
    for (int i = 50; i <= 1000; ++i)
        worst = std::max(worst, std::abs(d.values[i] - lam * traj.values[i] - f(traj.grid.t(i))));
    CHECK(worst < 1e-3);
}
