#include "fractel/mlfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fractel {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr int series_terms = 500;
constexpr int asym_terms = 300;

double sinpi(double x)
{
    double r = x - 2.0 * std::nearbyint(0.5 * x);
    return std::sin(pi * r);
}

void check_params(double rho, double mu, double tol)
{
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw InvalidParameter("rho must be positive and finite");
    if (!std::isfinite(mu))
        throw InvalidParameter("mu must be finite");
    if (!(tol > 0.0) || !(tol < 1.0))
        throw InvalidParameter("tolerance must lie in (0, 1)");
}

double scale_of(cplx v) { return std::max(1.0, std::abs(v)); }

/// log of the cancellation factor sum|terms| / |E| predicted for the power series
double series_condition_log(double rho, cplx z)
{
    double x = std::pow(std::abs(z), 1.0 / rho);
    double th = std::arg(z);
    double best = 0.0;
    for (int m = -1; m <= 1; ++m) {
        double a = th + 2.0 * pi * m;
        if (std::abs(a) < rho * pi)
            best = std::max(best, x * std::cos(a / rho));
    }
    return x - best;
}

struct ContourParams {
    double mu = 0.0, h = 0.0;
    double n = std::numeric_limits<double>::infinity();
};

ContourParams optimal_bounded(double t, double phi_j, double phi_j1, double pj, double qj,
                              double log_epsilon)
{
    const double log_eps = std::log(eps);
    const double fac = 1.01;
    double f_max = std::exp(log_epsilon - log_eps);
    double sq_j = std::sqrt(phi_j);
    double threshold = 2.0 * std::sqrt((log_epsilon - log_eps) / t);
    double sq_j1 = std::min(std::sqrt(phi_j1), threshold - sq_j);
    double sqbar_j = 0.0, sqbar_j1 = 0.0, f_bar = 1.0;
    bool adm = false;

    if (pj < 1e-14 && qj < 1e-14) {
        sqbar_j = sq_j;
        sqbar_j1 = sq_j1;
        adm = true;
    } else if (pj < 1e-14) {
        sqbar_j = sq_j;
        double f_min = sq_j > 0 ? fac * std::pow(sq_j / (sq_j1 - sq_j), qj) : fac;
        if (f_min < f_max) {
            f_bar = f_min + f_min / f_max * (f_max - f_min);
            double fq = std::pow(f_bar, -1.0 / qj);
            sqbar_j1 = (2.0 * sq_j1 - fq * sq_j) / (2.0 + fq);
            adm = true;
        }
    } else if (qj < 1e-14) {
        sqbar_j1 = sq_j1;
        double f_min = fac * std::pow(sq_j1 / (sq_j1 - sq_j), pj);
        if (f_min < f_max) {
            f_bar = f_min + f_min / f_max * (f_max - f_min);
            double fp = std::pow(f_bar, -1.0 / pj);
            sqbar_j = (2.0 * sq_j + fp * sq_j1) / (2.0 - fp);
            adm = true;
        }
    } else {
        double f_min = fac * (sq_j + sq_j1) / std::pow(sq_j1 - sq_j, std::max(pj, qj));
        if (f_min < f_max) {
            f_min = std::max(f_min, 1.5);
            f_bar = f_min + f_min / f_max * (f_max - f_min);
            double fp = std::pow(f_bar, -1.0 / pj);
            double fq = std::pow(f_bar, -1.0 / qj);
            double w = -phi_j1 * t / log_epsilon;
            double den = 2.0 + w - (1.0 + w) * fp + fq;
            sqbar_j = ((2.0 + w + fq) * sq_j + fp * sq_j1) / den;
            sqbar_j1 = (-(1.0 + w) * fq * sq_j + (2.0 + w - (1.0 + w) * fp) * sq_j1) / den;
            adm = true;
        }
    }
    ContourParams out;
    if (!adm)
        return out;
    log_epsilon -= std::log(f_bar);
    double w = -sqbar_j1 * sqbar_j1 * t / log_epsilon;
    out.mu = std::pow(((1.0 + w) * sqbar_j + sqbar_j1) / (2.0 + w), 2);
    out.h = -2.0 * pi / log_epsilon * (sqbar_j1 - sqbar_j) / ((1.0 + w) * sqbar_j + sqbar_j1);
    out.n = std::ceil(std::sqrt(1.0 - log_epsilon / t / out.mu) / out.h);
    return out;
}

ContourParams optimal_unbounded(double t, double phi_j, double pj, double log_epsilon)
{
    double sq_phi_j = std::sqrt(phi_j);
    double phibar = phi_j > 0 ? phi_j * 1.01 : 0.01;
    double sqbar = std::sqrt(phibar);
    const double f_min = 1.0, f_max = 10.0, f_tar = 5.0;
    double nj = 0.0, a = 0.0, sq_mu = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
        double phi_t = phibar * t;
        double lept = log_epsilon / phi_t;
        nj = std::ceil(phi_t / pi * (1.0 - 1.5 * lept + std::sqrt(1.0 - 2.0 * lept)));
        a = pi * nj / phi_t;
        sq_mu = sqbar * std::abs(4.0 - a) / std::abs(7.0 - std::sqrt(1.0 + 12.0 * a));
        double fbar = std::pow((sqbar - sq_phi_j) / sq_mu, -pj);
        if (pj < 1e-14 || (f_min < fbar && fbar < f_max))
            break;
        sqbar = std::pow(f_tar, -1.0 / pj) * sq_mu + sq_phi_j;
        phibar = sqbar * sqbar;
    }
    ContourParams out;
    out.mu = sq_mu * sq_mu;
    out.h = (-3.0 * a - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * a)) / (4.0 - a) / nj;
    out.n = nj;

    const double log_eps = std::log(eps);
    double threshold = (log_epsilon - log_eps) / t;
    if (out.mu > threshold) {
        double q = std::abs(pj) < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / pj) * std::sqrt(out.mu);
        phibar = std::pow(q + sq_phi_j, 2);
        if (phibar < threshold) {
            double w = std::sqrt(log_eps / (log_eps - log_epsilon));
            double u = std::sqrt(-phibar * t / log_eps);
            out.mu = threshold;
            out.n = std::ceil(w * log_epsilon / 2.0 / pi / (u * w - 1.0));
            out.h = std::sqrt(log_eps / (log_eps - log_epsilon)) / out.n;
        } else {
            out.n = std::numeric_limits<double>::infinity();
            out.h = 0.0;
        }
    }
    return out;
}

} // namespace

std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::series: return "series";
    case Regime::asymptotic: return "asymptotic";
    case Regime::contour: return "contour";
    }
    return "unknown";
}

double rgamma(double x)
{
    if (x <= 0.0 && x == std::floor(x))
        return 0.0;
    if (x > 171.5)
        return 0.0;
    if (x > 0.0)
        return 1.0 / std::tgamma(x);
    // reflection keeps the sign and magnitude accurate for negative arguments
    double s = sinpi(x) / pi;
    if (1.0 - x < 170.0)
        return s * std::tgamma(1.0 - x);
    return s * std::exp(std::lgamma(1.0 - x));
}

MittagLeffler::MittagLeffler(double rho, double mu, double tol) : rho_(rho), mu_(mu), tol_(tol)
{
    check_params(rho, mu, tol);
    series_coef_.resize(series_terms);
    for (int k = 0; k < series_terms; ++k)
        series_coef_[k] = rgamma(rho * k + mu);
    if (rho < 1.0) {
        asym_coef_.assign(asym_terms + 1, 0.0);
        for (int k = 1; k <= asym_terms; ++k)
            asym_coef_[k] = rgamma(mu - rho * k);
        asym_env_.assign(asym_terms + 1, 0.0);
        for (int k = 1; k <= asym_terms; ++k) {
            double a = 1.0 - mu + rho * k;
            asym_env_[k] = a > 1.0 ? std::lgamma(a) - std::log(pi) : std::log(1.2);
        }
    }
}

std::optional<MLResult> MittagLeffler::series(cplx z) const
{
    double az = std::abs(z);
    double x = std::pow(az, 1.0 / rho_);
    if ((x + 40.0) / rho_ > series_terms)
        return std::nullopt;

    cplx sum = 0.0, comp = 0.0, zk = 1.0;
    double abs_weighted = 0.0, prev = 0.0, tail = 0.0;
    bool done = false;
    // Neumaier summation, per component
    auto add = [](double& s, double& c, double v) {
        double t = s + v;
        c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
        s = t;
    };
    for (int k = 0; k < series_terms; ++k) {
        cplx term = series_coef_[k] * zk;
        double at = std::abs(term);
        if (!std::isfinite(at))
            return std::nullopt;
        double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
        add(sr, cr, term.real());
        add(si, ci, term.imag());
        sum = {sr, si};
        comp = {cr, ci};
        abs_weighted += (4.0 + std::sqrt(double(k))) * at;
        if (k > 0 && rho_ * k + mu_ > x + 1.0 && prev > 0.0 && at > 0.0) {
            double r = at / prev;
            if (r < 1.0) {
                tail = at * r / (1.0 - r);
                if (tail <= 0.5 * eps * scale_of(sum)) {
                    done = true;
                    break;
                }
            }
        }
        if (at > 0.0)
            prev = at;
        zk *= z;
    }
    if (!done)
        return std::nullopt;
    sum += comp;
    MLResult out;
    out.value = z.imag() == 0.0 ? cplx(sum.real(), 0.0) : sum;
    out.est_abs_error = eps * abs_weighted + tail;
    out.regime = Regime::series;
    return out;
}

std::optional<MLResult> MittagLeffler::asymptotic(cplx z) const
{
    double az = std::abs(z);
    if (rho_ >= 1.0 || az <= 1.0)
        return std::nullopt;
    double x = std::pow(az, 1.0 / rho_);
    double th = std::arg(z);

    cplx expo = 0.0;
    if (std::abs(th) < rho_ * pi) {
        cplx zr = std::pow(z, 1.0 / rho_);
        expo = std::pow(zr, 1.0 - mu_) * std::exp(zr) / rho_;
        if (!std::isfinite(std::abs(expo)))
            return std::nullopt;
    }
    double stokes = std::pow(x, 1.0 - mu_) * std::exp(-x) / rho_;

    // terms are compared through the envelope Gamma(1 - mu + rho k) / (pi |z|^k), which
    // stays smooth where individual coefficients vanish or nearly vanish
    cplx w = 1.0 / z, wk = w, sum = 0.0;
    double log_az = std::log(az);
    double prev_env = std::numeric_limits<double>::infinity();
    double last = 0.0, abs_sum = 0.0;
    for (int k = 1; k <= asym_terms; ++k, wk *= w) {
        double env = std::exp(asym_env_[k] - k * log_az);
        if (env > prev_env || !std::isfinite(env)) {
            last = prev_env;
            break;
        }
        last = env;
        if (env <= 0.5 * eps * scale_of(sum + expo))
            break;
        cplx term = -asym_coef_[k] * wk;
        sum += term;
        abs_sum += std::abs(term);
        prev_env = env;
    }
    MLResult out;
    out.value = sum + expo;
    if (z.imag() == 0.0)
        out.value = cplx(out.value.real(), 0.0);
    out.est_abs_error = last + stokes + 4.0 * eps * (abs_sum + std::abs(expo));
    out.regime = Regime::asymptotic;
    return out;
}

MLResult MittagLeffler::contour(cplx z) const
{
    const double t = 1.0;
    const double alpha = rho_, beta = mu_;
    double log_epsilon = std::log(tol_);
    double theta = std::arg(z);
    double az = std::abs(z);

    std::vector<cplx> poles;
    if (az > 0.0) {
        int kmin = int(std::ceil(-alpha / 2.0 - theta / (2.0 * pi)));
        int kmax = int(std::floor(alpha / 2.0 - theta / (2.0 * pi)));
        for (int k = kmin; k <= kmax; ++k)
            poles.push_back(std::pow(az, 1.0 / alpha) *
                            std::exp(cplx(0.0, (theta + 2.0 * k * pi) / alpha)));
    }
    std::vector<std::pair<double, cplx>> sing;
    for (cplx s : poles) {
        double phi = 0.5 * (s.real() + std::abs(s));
        if (phi > 1e-15)
            sing.emplace_back(phi, s);
    }
    std::sort(sing.begin(), sing.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    sing.insert(sing.begin(), {0.0, cplx(0.0)});
    const std::size_t j1 = sing.size();
    std::vector<double> phi(j1 + 1), p(j1), q(j1);
    for (std::size_t i = 0; i < j1; ++i)
        phi[i] = sing[i].first;
    phi[j1] = std::numeric_limits<double>::infinity();
    p[0] = std::max(0.0, -2.0 * (alpha - beta + 1.0));
    for (std::size_t i = 1; i < j1; ++i)
        p[i] = 1.0;
    for (std::size_t i = 0; i + 1 < j1; ++i)
        q[i] = 1.0;
    q[j1 - 1] = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> admissible;
    for (std::size_t i = 0; i < j1; ++i)
        if (phi[i] < (log_epsilon - std::log(eps)) / t && phi[i] < phi[i + 1])
            admissible.push_back(i);
    if (admissible.empty())
        throw NonConvergence("contour: no admissible integration region");

    ContourParams best;
    std::size_t ibest = 0;
    for (int relax = 0; relax < 30; ++relax) {
        best = ContourParams{};
        for (std::size_t i : admissible) {
            ContourParams c = i + 1 < j1
                                  ? optimal_bounded(t, phi[i], phi[i + 1], p[i], q[i], log_epsilon)
                                  : optimal_unbounded(t, phi[i], p[i], log_epsilon);
            if (c.n < best.n) {
                best = c;
                ibest = i;
            }
        }
        if (best.n <= 200)
            break;
        log_epsilon += std::log(10.0);
    }
    if (!(best.n <= 200))
        throw NonConvergence("contour: integration parameters not found");

    const int n = int(best.n);
    cplx integral = 0.0;
    double abs_sum = 0.0;
    for (int k = -n; k <= n; ++k) {
        double u = best.h * k;
        cplx s = best.mu * std::pow(cplx(1.0, u), 2);
        cplx ds = cplx(-2.0 * best.mu * u, 2.0 * best.mu);
        cplx f = std::pow(s, alpha - beta) / (std::pow(s, alpha) - z) * ds * std::exp(s * t);
        integral += f;
        abs_sum += std::abs(f);
    }
    integral *= best.h / (2.0 * pi * cplx(0.0, 1.0));
    abs_sum *= best.h / (2.0 * pi);

    cplx residues = 0.0;
    for (std::size_t i = ibest + 1; i < j1; ++i) {
        cplx s = sing[i].second;
        residues += std::pow(s, 1.0 - beta) * std::exp(s * t) / alpha;
    }
    MLResult out;
    out.value = integral + residues;
    if (z.imag() == 0.0)
        out.value = cplx(out.value.real(), 0.0);
    out.est_abs_error = std::exp(log_epsilon) * scale_of(out.value) + 4.0 * eps * abs_sum;
    out.regime = Regime::contour;
    return out;
}

MLResult MittagLeffler::operator()(cplx z) const
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidParameter("Mittag-Leffler argument must be finite");
    if (z == cplx(0.0)) {
        double v = rgamma(mu_);
        return {cplx(v, 0.0), eps * std::abs(v), Regime::series};
    }
    auto target = [&](const MLResult& r) { return tol_ * scale_of(r.value); };
    std::optional<MLResult> best;
    auto consider = [&](const MLResult& r) {
        if (!best || r.est_abs_error < best->est_abs_error)
            best = r;
    };

    if (series_condition_log(rho_, z) < std::log(0.1 * tol_ / eps)) {
        if (auto s = series(z)) {
            if (s->est_abs_error <= target(*s))
                return *s;
            consider(*s);
        }
    }
    if (auto a = asymptotic(z)) {
        if (a->est_abs_error <= target(*a))
            return *a;
        consider(*a);
    }
    try {
        MLResult c = contour(z);
        if (c.est_abs_error <= target(c))
            return c;
        consider(c);
    } catch (const NonConvergence&) {
        if (!best)
            throw;
    }
    if (best && best->est_abs_error <= 10.0 * target(*best))
        return *best;
    throw NonConvergence("Mittag-Leffler evaluation did not reach the requested tolerance");
}

MLResult ml(double rho, double mu, cplx z, double tol)
{
    return MittagLeffler(rho, mu, tol)(z);
}

Prabhakar2::Prabhakar2(double rho, double mu, double tol)
    : rho_(rho), mu_(mu), lower_(rho, mu - 1.0, tol), same_(rho, mu, tol)
{
}

MLResult Prabhakar2::operator()(cplx z) const
{
    MLResult a = lower_(z);
    MLResult b = same_(z);
    double c = 1.0 + rho_ - mu_;
    MLResult out;
    out.value = (a.value + c * b.value) / rho_;
    out.est_abs_error = (a.est_abs_error + std::abs(c) * b.est_abs_error) / rho_;
    out.regime = a.regime;
    return out;
}

MLResult ml_prabhakar2(double rho, double mu, cplx z, double tol)
{
    return Prabhakar2(rho, mu, tol)(z);
}

double default_sector_angle(double rho)
{
    return 0.5 * (0.5 * pi * rho + std::min(pi, pi * rho));
}

double ml_bound_check(double rho, double mu, cplx z, double beta)
{
    check_params(rho, mu, 1e-12);
    if (!(beta > 0.5 * pi * rho) || !(beta < std::min(pi, pi * rho)))
        throw InvalidParameter("sector angle must satisfy pi*rho/2 < beta < min(pi, pi*rho)");
    if (z != cplx(0.0) && std::abs(std::arg(z)) < beta)
        throw SectorViolation("argument lies outside the sector |arg z| >= beta");
    return std::abs(ml(rho, mu, z).value) * (1.0 + std::abs(z));
}

double ml_bound_check(double rho, double mu, cplx z)
{
    return ml_bound_check(rho, mu, z, default_sector_angle(rho));
}

} // namespace fractel
