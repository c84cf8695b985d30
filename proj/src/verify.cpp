#include "fractel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "fractel/parallel.hpp"
#include "verify_internal.hpp"

namespace fractel {

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

std::string_view anchor_statement(Anchor a)
{
    switch (a) {
    case Anchor::ml_series_definition:
        return "E_{rho,mu}(z) = sum z^k / Gamma(rho k + mu)";
    case Anchor::prabhakar_reduction:
        return "E^2_{rho,mu} as a combination of E_{rho,mu-1} and E_{rho,mu}";
    case Anchor::ml_asymptotic_law:
        return "E_{rho,mu}(z) = -z^{-1} / Gamma(. ) + O(|z|^{-2}) on the sector beta <= |arg z| <= pi";
    case Anchor::ml_decay_bound:
        return "|E_{rho,mu}(z)| <= M / (1 + |z|) on the sector";
    case Anchor::large_eigenvalue_bound:
        return "t^{rho-1} |E_{rho,mu}(-(alpha - sqrt(alpha^2 - lambda)) t^rho)| <= M lambda^{eps-1/2} t^{2 eps rho - 1}";
    case Anchor::caputo_eigenfunction:
        return "D^rho E_{rho,1}(lambda t^rho) = lambda E_{rho,1}(lambda t^rho)";
    case Anchor::scalar_solution:
        return "closed-form solution of the modal Cauchy problem in both cases";
    case Anchor::integro_auxiliary:
        return "D^rho u + 2 alpha u + alpha^2 J^rho u = J^rho g solved by the Prabhakar kernel";
    case Anchor::relaxation_auxiliary:
        return "D^rho u - lambda u = f solved by the kernel t^{rho-1} E_{rho,rho}(lambda t^rho)";
    case Anchor::semigroup_estimates:
        return "bounds on E(-t^rho S) g, S E(-t^rho S) g and A E(-t^rho S) g";
    case Anchor::resolvent_estimates:
        return "bounds on R^{-1} E(-t^rho S) g, S R^{-1} E(-t^rho S) g and A R^{-1} E(-t^rho S) g";
    case Anchor::convolution_estimates:
        return "forced convolution terms bounded by max ||g(t)||_eps";
    case Anchor::double_integral_estimate:
        return "J^rho of the Prabhakar convolution bounded by (M / Gamma(rho)) (T^{3 rho} / 2 rho^3) (2 + rho) ||g||";
    case Anchor::stability_estimate:
        return "||(D^rho)^2 u|| + ||D^rho u|| + ||A u|| <= C [t^{-rho} (||phi0|| + ||phi1||_{1/2}) + max ||f||_eps]";
    case Anchor::uniqueness:
        return "zero data give the zero solution";
    case Anchor::modal_expansion:
        return "u(t) = sum T_k(t) v_k with each T_k solving its modal problem";
    case Anchor::power_scale:
        return "||h||_tau^2 = sum lambda_k^{2 tau} |h_k|^2 and D(A^tau) in D(A^sigma) for tau >= sigma";
    case Anchor::count_:
        break;
    }
    return "";
}

nlohmann::json CheckReport::to_json() const
{
    nlohmann::json j;
    j["check_id"] = check_id;
    j["anchor"] = std::string(anchor_statement(anchor));
    j["status"] = pass ? "pass" : "fail";
    if (certified_constant)
        j["certified_constant"] = *certified_constant;
    else
        j["certified_constant"] = nullptr;
    j["scope"] = "empirical supremum over the declared sweep, not a proof";
    j["details"] = details;
    return j;
}

namespace detail {

std::vector<double> geomspace(double a, double b, int n)
{
    std::vector<double> out(n);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i)
        out[i] = i + 1 == n ? b : std::exp(la + (lb - la) * i / (n - 1));
    return out;
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = i + 1 == n ? b : a + (b - a) * i / (n - 1);
    return out;
}

double tail_slope(const std::vector<double>& x, const std::vector<double>& y, int count,
                  bool toward_zero)
{
    std::vector<std::size_t> idx(x.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return toward_zero ? x[a] < x[b] : x[a] > x[b]; });
    std::vector<double> xs, ys;
    for (auto i : idx) {
        if (static_cast<int>(xs.size()) == count)
            break;
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    }
    if (xs.size() < 2)
        return 0.0;
    return observed_order(xs, ys);
}

std::vector<Fixture> suite_fixtures(const SuiteConfig& cfg)
{
    auto fam = fixture_family(cfg.seed, cfg.fixtures);
    for (auto& f : fam)
        f.K = capped(cfg, f.K);
    return fam;
}

int capped(const SuiteConfig& cfg, int K) { return cfg.max_modes > 0 ? std::min(K, cfg.max_modes) : K; }

} // namespace detail

std::vector<CheckReport> run_suite(const SuiteConfig& cfg)
{
    std::vector<CheckInfo> selected;
    for (const auto& c : check_table)
        if (cfg.only.empty() || std::find(cfg.only.begin(), cfg.only.end(), c.id) != cfg.only.end())
            selected.push_back(c);
    for (const auto& id : cfg.only)
        if (std::none_of(check_table.begin(), check_table.end(), [&](auto& c) { return c.id == id; }))
            throw InvalidParameter("unknown check id: " + id);

    std::vector<CheckReport> out(selected.size());
    parallel_for(static_cast<int>(selected.size()), thread_count(cfg.threads), [&](int i) {
        const auto& info = selected[i];
        CheckReport rep;
        try {
            rep = detail::find_check(info.id)(cfg);
        } catch (const std::exception& e) {
            rep.pass = false;
            rep.details = {{"exception", e.what()}};
        }
        rep.check_id = std::string(info.id);
        rep.anchor = info.anchor;
        out[i] = std::move(rep);
    });
    return out;
}

std::string to_json_lines(const std::vector<CheckReport>& reports)
{
    std::string out;
    for (const auto& r : reports)
        out += r.to_json().dump() + "\n";
    return out;
}

std::string summary_table(const std::vector<CheckReport>& reports)
{
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-32s %-6s %s\n", "check", "status", "certified constant");
    os << line;
    int failed = 0;
    for (const auto& r : reports) {
        std::string c = r.certified_constant ? std::to_string(*r.certified_constant) : "-";
        if (r.certified_constant) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6g", *r.certified_constant);
            c = buf;
        }
        std::snprintf(line, sizeof line, "%-32s %-6s %s\n", r.check_id.c_str(), r.pass ? "pass" : "FAIL",
                      c.c_str());
        os << line;
        failed += !r.pass;
    }
    os << reports.size() - failed << "/" << reports.size() << " checks passed\n";
    return os.str();
}

Certified certify_constant(std::string_view check_id, const SweepSpec& sw)
{
    using namespace detail;
    if (!(sw.rho > 0.0) || !(sw.rho < 1.0))
        throw InvalidParameter("sweep rho must lie in (0, 1)");
    if (sw.points < 2)
        throw InvalidParameter("sweep needs at least two points");

    Certified best;
    best.value = -1.0;
    auto consider = [&](double v, nlohmann::json where) {
        if (!(v <= best.value)) {
            best.value = v;
            best.argmax = std::move(where);
        }
    };

    if (check_id == "ml_decay_bound") {
        const double beta = default_sector_angle(sw.rho);
        std::vector<double> angles = sw.angles.empty() ? std::vector<double>{beta, 0.5 * (beta + pi), pi}
                                                       : sw.angles;
        for (double th : angles)
            if (!(th > 0.5 * pi * sw.rho) || th > pi)
                throw SectorViolation("sweep angle outside the admissible sector");
        if (static_cast<long>(angles.size()) * (sw.points + 1) > sw.budget)
            throw SweepBudgetExceeded("decay sweep exceeds its evaluation budget");
        MLProbe E(sw.rho, sw.mu, sw.fault_inject);
        auto rs = geomspace(sw.r_min, sw.r_max, sw.points);
        consider(std::abs(E(0.0)), {{"r", 0.0}, {"arg", 0.0}});
        double slope = -std::numeric_limits<double>::infinity();
        for (double th : angles) {
            std::vector<double> ratio;
            for (double r : rs) {
                cplx z = std::polar(r, th);
                ratio.push_back(std::abs(E(z)) * (1.0 + r));
                consider(ratio.back(), {{"r", r}, {"arg", th}});
            }
            int decade = std::max(2, static_cast<int>(std::ceil(sw.points / std::log10(sw.r_max / sw.r_min))));
            slope = std::max(slope, tail_slope(rs, ratio, decade));
        }
        best.tail_slope = slope;
        return best;
    }

    if (check_id == "semigroup_bounds") {
        if (sw.eigenvalues.empty())
            throw InvalidParameter("semigroup sweep needs eigenvalues");
        if (static_cast<long>(sw.eigenvalues.size()) * sw.points * 2 > sw.budget)
            throw SweepBudgetExceeded("semigroup sweep exceeds its evaluation budget");
        MLProbe E(sw.rho, sw.mu, sw.fault_inject);
        auto ts = geomspace(1e-12 * sw.T, sw.T, sw.points);
        std::vector<double> sup_t(ts.size(), 0.0);
        for (double lam : sw.eigenvalues) {
            cplx r = std::sqrt(cplx(sw.alpha * sw.alpha - lam, 0.0));
            for (cplx S : {sw.alpha - r, sw.alpha + r})
                for (std::size_t j = 0; j < ts.size(); ++j) {
                    double v = std::abs(E(-S * std::pow(ts[j], sw.rho)));
                    sup_t[j] = std::max(sup_t[j], v);
                    consider(v, {{"lambda", lam}, {"t", ts[j]}});
                }
        }
        consider(std::abs(E(0.0)), {{"t", 0.0}});
        best.tail_slope = tail_slope(ts, sup_t, 5, true);
        return best;
    }

    if (check_id == "large_eigenvalue_kernel_bound") {
        const std::vector<double> eps{0.1, 0.25, 0.45};
        std::vector<double> lams = sw.eigenvalues;
        if (lams.empty())
            for (double m : {1.0, 10.0, 100.0, 1e3, 1e4})
                lams.push_back(4.0 * sw.alpha * sw.alpha * m);
        if (static_cast<long>(lams.size() * eps.size()) * sw.points > sw.budget)
            throw SweepBudgetExceeded("large-eigenvalue sweep exceeds its evaluation budget");
        MLProbe E(sw.rho, sw.mu, sw.fault_inject);
        auto ts = geomspace(1e-12 * sw.T, sw.T, sw.points);
        std::vector<double> by_lambda;
        for (double lam : lams) {
            if (lam < 4.0 * sw.alpha * sw.alpha * (1 - 1e-12))
                throw InvalidParameter("large-eigenvalue sweep needs lambda >= 4 alpha^2");
            cplx S = sw.alpha - std::sqrt(cplx(sw.alpha * sw.alpha - lam, 0.0));
            double worst = 0.0;
            for (double t : ts) {
                double e = std::abs(E(-S * std::pow(t, sw.rho)));
                for (double ep : eps) {
                    double v = std::pow(t, sw.rho - 1.0) * e /
                               (std::pow(lam, ep - 0.5) * std::pow(t, 2.0 * ep * sw.rho - 1.0));
                    worst = std::max(worst, v);
                    consider(v, {{"lambda", lam}, {"t", t}, {"eps", ep}});
                }
            }
            by_lambda.push_back(worst);
        }
        best.tail_slope = tail_slope(lams, by_lambda, 3);
        return best;
    }

    if (check_id == "double_integral_bound") {
        // M for E_{rho,2rho-1} and E_{rho,2rho} on the negative real axis
        double M = 0.0;
        auto xs = geomspace(1e-6, 1e6, sw.points);
        xs.insert(xs.begin(), 0.0);
        for (double mu : {2.0 * sw.rho - 1.0, 2.0 * sw.rho}) {
            MLProbe E(sw.rho, mu, sw.fault_inject);
            for (double x : xs)
                M = std::max(M, std::abs(E(-x)));
        }
        const double bound =
            M * rgamma(sw.rho) * std::pow(sw.T, 3.0 * sw.rho) / (2.0 * std::pow(sw.rho, 3)) * (2.0 + sw.rho);
        // sup over ||g|| <= 1 of ||J^rho (k * g)|| is the L1 norm of t^{3rho-1} E^2_{rho,3rho}(-alpha t^rho)
        MLKernel k3(sw.rho, 3.0 * sw.rho, 2, -sw.alpha);
        const double p = 1.0 / (3.0 * sw.rho);
        const int panels = 256;
        const auto& rule = gauss_legendre(12);
        double l1 = 0.0;
        for (int i = 0; i < panels; ++i) {
            double v0 = double(i) / panels, v1 = double(i + 1) / panels;
            for (const auto& [x, w] : rule) {
                double v = 0.5 * (v0 + v1) + 0.5 * (v1 - v0) * x;
                double s = sw.T * std::pow(v, p);
                double ds = sw.T * p * std::pow(v, p - 1.0);
                l1 += 0.5 * (v1 - v0) * w * std::abs(k3.value(s)) * ds;
            }
        }
        best.value = l1 / bound;
        best.argmax = {{"M", M}, {"explicit_constant", bound}, {"kernel_l1_norm", l1}};
        return best;
    }

    throw InvalidParameter("no sweep defined for check id " + std::string(check_id));
}

} // namespace fractel
