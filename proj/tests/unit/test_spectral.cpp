#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fractel/spectral_solver.hpp"

using namespace fractel;

namespace {

constexpr double pi = std::numbers::pi;

TelegraphProblem laplacian_problem(int K, double rho = 0.5, double alpha = 1.0)
{
    TelegraphProblem p;
    p.rho = rho;
    p.alpha = alpha;
    p.T = 1.0;
    p.op = SpectralOperator::laplacian_1d(pi, K);
    p.phi0.assign(K, 0.0);
    p.phi1.assign(K, 0.0);
    return p;
}

TelegraphProblem mixed_problem(int K)
{
    auto p = laplacian_problem(K);
    for (int k = 1; k <= K; ++k) {
        p.phi1[k - 1] = std::pow(k, -3.0);
        p.phi0[k - 1] = (k % 2 ? -1.0 : 1.0) / (k * k);
    }
    return p;
}

} // namespace

TEST_CASE("norm_tau")
{
    std::vector<double> eig{1.0, 4.0};
    std::vector<cplx> v1{1.0, 0.0}, v12{1.0, 1.0};
    for (double tau : {-1.0, 0.0, 0.7})
        CHECK(norm_tau(v1, eig, tau).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(norm_tau(v12, eig, 0.5).value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));

    std::vector<cplx> c{0.8, -0.35, 0.12, 0.5, -0.07, 0.21, -0.44, 0.03};
    std::vector<double> lam{1, 4, 9, 16, 25, 36, 49, 64};
    CHECK(norm_tau(c, lam, 0.3).value == doctest::Approx(2.1721126415949566065).epsilon(1e-14));

    // embedding of the power scale
    std::vector<double> small{0.25, 0.5, 3.0, 8.0, 20.0, 21.0, 40.0, 90.0};
    for (double sigma : {0.0, 0.2})
        for (double tau : {0.5, 1.0}) {
            double bound = std::max(1.0, std::pow(small[0], sigma - tau));
            CHECK(norm_tau(c, small, sigma).value <= bound * norm_tau(c, small, tau).value * (1 + 1e-15));
        }
}

TEST_CASE("operator construction and validation")
{
    auto op = SpectralOperator::laplacian_1d(2.0, 4);
    CHECK(op.K() == 4);
    CHECK(op.eigenvalues()[2] == doctest::Approx(std::pow(3 * pi / 2, 2)));
    CHECK(op.eigenfunction(1, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(SpectralOperator::diagonal({}), InvalidParameter);
    CHECK_THROWS_AS(SpectralOperator::diagonal({2.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(SpectralOperator::diagonal({0.0}), InvalidParameter);
    CHECK_THROWS_AS(SpectralOperator::diagonal({1.0}).eigenfunction(1, 0.1), WrongOperatorKind);

    auto p = laplacian_problem(3);
    p.phi1.pop_back();
    CHECK_THROWS_AS(solve(p), InvalidParameter);
    p = laplacian_problem(3);
    p.rho = 1.5;
    CHECK_THROWS_AS(solve(p), InvalidParameter);
}

TEST_CASE("single mode reduces to the scalar solver")
{
    TelegraphProblem p;
    p.rho = 0.75;
    p.alpha = 0.5;
    p.op = SpectralOperator::diagonal({2.0});
    p.phi0 = {-0.4};
    p.phi1 = {1.1};
    p.f = {Forcing::constant(0.3)};
    auto field = solve(p);
    auto s = solve_scalar_distinct(p.mode(0));
    for (double t : {0.1, 0.6, 1.0}) {
        auto st = field.state(t);
        CHECK(st.u[0] == s.y(t));
        CHECK(st.du[0] == s.dy_rho(t));
    }
}

TEST_CASE("zero data gives the zero field")
{
    auto field = solve(laplacian_problem(8));
    for (double t : dyadic_times(1.0, 6)) {
        auto n = field.norms(field.state(t));
        CHECK(n.u == 0.0);
        CHECK(n.Au == 0.0);
        CHECK(n.du == 0.0);
    }
    auto rep = stability_report(field, dyadic_times(1.0, 20));
    CHECK(rep.sup_ratio == 0.0);
    CHECK(rep.bounded);
}

TEST_CASE("critical Laplacian fixture")
{
    auto p = laplacian_problem(32);
    p.phi1[0] = 1.0;
    p.phi1[1] = 1.0;
    auto field = solve(p);
    CHECK(field.critical_modes() == std::vector<int>{1});
    for (double t : {0.01, 0.3, 1.0}) {
        auto st = field.state(t);
        for (int k = 0; k < 32; ++k)
            CHECK(st.u[k].imag() == 0.0);
        CHECK(field.identity_defect(st) < 1e-12);
    }
    for (int k : {0, 1}) {
        std::vector<double> hs, rs;
        for (int n : {250, 1000}) {
            auto smp = field.mode(k).sample(n);
            SampledTrajectory f{smp.grid, std::vector<cplx>(n + 1, 0.0)};
            rs.push_back(caputo_squared_residual(smp.y_traj(), smp.dy_traj(), p.rho, p.alpha,
                                                 p.op.eigenvalues()[k], f));
            hs.push_back(1.0 / n);
        }
        CAPTURE(k);
        CHECK(observed_order(hs, rs) > 1.4);
    }
}

TEST_CASE("physical synthesis")
{
    auto field = solve(mixed_problem(32));
    std::vector<double> x{0.0, pi / 2, pi};
    std::vector<double> t{0.0, 0.5};
    auto phys = assemble_physical(field, x, t);
    CHECK(phys.at(0, 1) == cplx(0.0));
    CHECK(phys.at(2, 1) == cplx(0.0));
    CHECK(std::abs(phys.at(1, 1) - 0.41870070136559695362) < 1e-10);

    auto single = laplacian_problem(4);
    single.phi1[0] = 1.0;
    auto sf = solve(single);
    std::vector<double> xs{0.3, 1.2, 2.9};
    std::vector<double> t0{0.0};
    auto u0 = assemble_physical(sf, xs, t0);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(u0.at(i, 0).real() == doctest::Approx(std::sqrt(2 / pi) * std::sin(xs[i])).epsilon(1e-15));

    TelegraphProblem diag;
    diag.op = SpectralOperator::diagonal({1.0});
    diag.phi0 = {0.0};
    diag.phi1 = {1.0};
    CHECK_THROWS_AS(assemble_physical(solve(diag), xs, t0), WrongOperatorKind);
}

TEST_CASE("Parseval agreement")
{
    auto field = solve(mixed_problem(32));
    const int nx = 2048;
    std::vector<double> x(nx + 1);
    for (int i = 0; i <= nx; ++i)
        x[i] = pi * i / nx;
    std::vector<double> ts{0.05, 0.5, 1.0};
    auto phys = assemble_physical(field, x, ts);
    for (std::size_t j = 0; j < ts.size(); ++j) {
        double s = 0.0;
        for (int i = 0; i <= nx; ++i)
            s += (i == 0 || i == nx ? 0.5 : 1.0) * std::norm(phys.at(i, j));
        double physical = std::sqrt(s * pi / nx);
        double modal = field.norms(field.state(ts[j])).u;
        CHECK(std::abs(physical - modal) < 1e-6);
    }
}

TEST_CASE("parallel and serial evaluation agree bit for bit")
{
    auto p = mixed_problem(16);
    p.f.assign(16, Forcing::callable([](double t) { return cplx(std::cos(t)); }, true));
    SolveOptions serial, parallel;
    parallel.threads = 4;
    auto a = solve(p, serial).tabulate(std::vector<double>{0.1, 0.7});
    auto b = solve(p, parallel).tabulate(std::vector<double>{0.1, 0.7});
    CHECK(a.u == b.u);
    CHECK(a.du == b.du);
    CHECK(a.d2u == b.d2u);
}

TEST_CASE("errors name the failing mode")
{
    auto p = laplacian_problem(3);
    TimeGrid short_grid{0.5, 10};
    p.f.assign(3, Forcing::zero());
    p.f[1] = Forcing::sampled({short_grid, std::vector<cplx>(11, 1.0)});
    auto field = solve(p);
    try {
        field.state(0.9);
        FAIL("expected an exception");
    } catch (const EvaluationOutOfDomain& e) {
        CHECK(std::string(e.what()).rfind("mode 2: ", 0) == 0);
    }
}

TEST_CASE("stability ratio and truncation")
{
    auto field = solve(mixed_problem(16));
    auto rep = stability_report(field, dyadic_times(1.0, 20));
    CHECK(rep.points.size() == 21);
    CHECK(std::isfinite(rep.sup_ratio));
    CHECK(rep.sup_ratio > 0.0);
    CHECK(rep.bounded);
    CHECK(std::isfinite(rep.sup_weighted_lhs));

    // truncation error shrinks as K doubles
    double t = 0.3;
    auto u8 = solve(mixed_problem(8)).state(t).u;
    auto u16 = solve(mixed_problem(16)).state(t).u;
    auto u32 = solve(mixed_problem(32)).state(t).u;
    auto tail = [](const std::vector<cplx>& lo, const std::vector<cplx>& hi) {
        double s = 0.0;
        for (std::size_t k = 0; k < hi.size(); ++k)
            s += std::norm(hi[k] - (k < lo.size() ? lo[k] : 0.0));
        return std::sqrt(s);
    };
    double d1 = tail(u8, u16), d2 = tail(u16, u32);
    CHECK(d2 < d1);
    CHECK(d2 < 0.3 * d1);
}
