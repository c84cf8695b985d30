#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "fractel/fixtures.hpp"
#include "fractel/scalar_solver.hpp"
#include "fractel/verify.hpp"

using namespace fractel;
namespace fs = std::filesystem;

namespace {

// pinned tolerances
constexpr double identity_tol = 1e-10;
constexpr double identity_runtime_s = 5.0;
constexpr double order_slack = 0.1;
constexpr double laplace_tol = 1e-6;
constexpr double scalar_runtime_s = 60.0;
constexpr double continuity_tol = 1e-4;
constexpr double initial_tol = 1e-3;
constexpr double parseval_tol = 1e-6;

struct Timed {
    CheckReport report;
    double seconds;
};

std::map<std::string, Timed> run_all(const SuiteConfig& base)
{
    std::map<std::string, Timed> out;
    for (const auto& c : check_table) {
        SuiteConfig cfg = base;
        cfg.only = {std::string(c.id)};
        auto t0 = std::chrono::steady_clock::now();
        auto r = run_suite(cfg);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out[std::string(c.id)] = {r.at(0), s};
    }
    return out;
}

int failures = 0;

void line(int n, bool pass, const std::string& what)
{
    std::printf("criterion %d: %s  %s\n", n, pass ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    failures += !pass;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

int main(int argc, char** argv)
{
    fs::path source = argc > 1 ? fs::path(argv[1]) : fs::path(FRACTEL_SOURCE_DIR);
    SuiteConfig cfg;
    auto R = run_all(cfg);

    // 1: identities and the three-parameter reduction
    {
        const auto& a = R["ml_classical_reductions"];
        const auto& b = R["prabhakar_reduction"];
        const auto& e = a.report.details["max_abs_error"];
        double worst = std::max({e["E11_exp"].get<double>(), e["E12_expm1_over_z"].get<double>(),
                                 e["E21_cos"].get<double>()});
        double pr = b.report.details["max_error"].get<double>();
        double secs = a.seconds + b.seconds;
        line(1, worst <= identity_tol && pr <= identity_tol && secs < identity_runtime_s,
             fmt("identities max err %.3g, reduction max err %.3g (tol %.0e), %.2f s", worst, pr, identity_tol, secs));
    }

    // 2: L1 order on the Caputo eigenfunction, literal 2 - rho - 0.1
    {
        const auto& d = R["caputo_eigenfunction"].report.details;
        bool ok = true;
        std::string worst;
        for (const auto& c : d["cases"]) {
            double rho = c["rho"].get<double>(), order = c["observed_order"].get<double>();
            if (order < 2.0 - rho - order_slack) {
                ok = false;
                worst += fmt(" rho=%.1f lambda=%.0f order %.3f < %.2f;", rho, c["lambda"].get<double>(), order,
                             2.0 - rho - order_slack);
            }
        }
        line(2, ok, "observed L1 orders vs 2 - rho - 0.1 over h in {1e-2,1e-3,1e-4}" + (ok ? std::string() : ":" + worst));
    }

    // 3: scalar residual with certified constant, Laplace agreement, runtime
    {
        const auto& res = R["scalar_equation_residual"];
        const auto& lap = R["scalar_laplace_consistency"];
        double diff = lap.report.details["max_abs_difference"].get<double>();
        double C = res.report.certified_constant.value_or(NAN);
        double secs = res.seconds + lap.seconds;
        bool ok = res.report.pass && std::isfinite(C) && diff <= laplace_tol &&
                  lap.report.details["critical_modes_checked"].get<int>() > 0 && secs < scalar_runtime_s;
        line(3, ok,
             fmt("residual <= C h^(2-rho) with C = %.4g (min resolved order %.3f); Laplace max diff %.3g (tol %.0e)",
                 C, res.report.details["min_resolved_order"].get<double>(), diff, laplace_tol) +
                 fmt(", %.1f s", secs));
    }

    // 4: case continuity
    {
        const auto& d = R["scalar_case_continuity"].report.details;
        double worst = 0.0;
        for (const auto& c : d["cases"])
            if (c["case"].get<std::string>().rfind("rho=", 0) == 0)
                worst = std::max(worst, c["max_abs_difference"].get<double>());
        line(4, worst <= continuity_tol, fmt("max |y_distinct - y_critical| = %.3g (tol %.0e)", worst, continuity_tol));
    }

    // 5: initial conditions on the reference problems, literal bound
    {
        struct Probe {
            const char* name;
            double lambda;
            double phi0, phi1, g;
        };
        const Probe probes[] = {{"distinct lambda=4 phi1=1", 4.0, 0.0, 1.0, 0.0},
                                {"critical phi1=1", 1.0, 0.0, 1.0, 0.0},
                                {"critical phi0=1", 1.0, 1.0, 0.0, 0.0},
                                {"critical g=1", 1.0, 0.0, 0.0, 1.0}};
        bool ok = true;
        std::string detail;
        for (const auto& pr : probes) {
            ScalarProblem p;
            p.rho = 0.5;
            p.alpha = 1.0;
            p.lambda = pr.lambda;
            p.phi0 = pr.phi0;
            p.phi1 = pr.phi1;
            if (pr.g != 0.0)
                p.g = Forcing::constant(pr.g);
            auto s = solve_scalar(p);
            double e4 = std::abs(s.dy_rho(1e-4) - p.phi0), e5 = std::abs(s.dy_rho(1e-5) - p.phi0),
                   e6 = std::abs(s.dy_rho(1e-6) - p.phi0);
            bool exact = s.y(0.0) == p.phi1;
            bool dec = e5 < e4 && e6 < e5;
            bool small = e6 <= initial_tol;
            ok = ok && exact && dec && small;
            detail += std::string(" [") + pr.name + ": y(0) exact " + (exact ? "yes" : "no") + ", decreasing " +
                      (dec ? "yes" : "no") + fmt(", err(1e-6 T) %.3g]", e6);
        }
        line(5, ok, fmt("bound %.0e:", initial_tol) + detail);
    }

    // 6: Parseval and zero-data uniqueness
    {
        const auto& sp = R["spectral_assembly"].report.details;
        double pars = sp["parseval_max_difference"].get<double>();
        double zero = R["zero_data_uniqueness"].report.details["max_abs"].get<double>();
        line(6, pars <= parseval_tol && sp["K"].get<int>() == 32 && zero == 0.0,
             fmt("Parseval diff %.3g (tol %.0e) at K = 32; zero-data max |u| = %.3g", pars, parseval_tol, zero));
    }

    // 7: estimate certifications
    {
        bool ok = true;
        std::string detail;
        for (const char* id : {"ml_decay_bound", "large_eigenvalue_kernel_bound", "semigroup_bounds", "resolvent_bounds",
                               "forced_convolution_bounds", "double_integral_bound", "stability_ratio"}) {
            const auto& r = R[id].report;
            double c = r.certified_constant.value_or(NAN);
            bool this_ok = r.pass && std::isfinite(c);
            if (std::string(id) == "double_integral_bound")
                this_ok = this_ok && c <= 1.0;
            ok = ok && this_ok;
            detail += std::string(" ") + id + fmt("=%.4g", c) + (this_ok ? "" : "(fail)");
        }
        line(7, ok, "certified constants:" + detail);
    }

    // 8: determinism of the CLI and of parallel evaluation
    {
        auto tmp = fs::temp_directory_path() / "fractel_acceptance";
        fs::remove_all(tmp);
        std::ostringstream sink;
        auto config = (source / "configs" / "critical_mode.json").string();
        int s1 = cli::run({"solve", "--config", config, "--out", (tmp / "a").string()}, sink, sink);
        int s2 = cli::run({"solve", "--config", config, "--out", (tmp / "b").string()}, sink, sink);
        bool same = s1 == 0 && s2 == 0;
        for (const char* f : {"solution.csv", "norms.json", "field.csv"})
            same = same && !slurp(tmp / "a" / f).empty() && slurp(tmp / "a" / f) == slurp(tmp / "b" / f);

        auto fx = fixture_family(cfg.seed, 1).front();
        auto times = dyadic_times(fx.T, 20);
        SolveOptions serial, parallel;
        parallel.threads = 4;
        auto ts = solve(fx.problem(), serial).tabulate(times);
        auto tp = solve(fx.problem(), parallel).tabulate(times);
        bool identical = ts.u == tp.u && ts.du == tp.du && ts.d2u == tp.d2u;
        line(8, same && identical,
             std::string("repeated solve outputs byte-identical: ") + (same ? "yes" : "no") +
                 "; serial vs 4-thread modal tables identical: " + (identical ? "yes" : "no"));
    }

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
