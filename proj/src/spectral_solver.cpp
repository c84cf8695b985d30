#include "fractel/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fractel/parallel.hpp"

namespace fractel {

namespace {

constexpr double pi = std::numbers::pi;

template <class E, class... Rest>
[[noreturn]] void rethrow_annotated(const std::string& prefix)
{
    try {
        throw;
    } catch (const E& e) {
        throw E(prefix + e.what());
    } catch (...) {
        if constexpr (sizeof...(Rest) > 0)
            rethrow_annotated<Rest...>(prefix);
        else
            throw;
    }
}

[[noreturn]] void rethrow_for_mode(int index)
{
    rethrow_annotated<InvalidParameter, NonConvergence, QuadratureFailure, EvaluationOutOfDomain,
                      CaseMismatch, std::logic_error, std::runtime_error>(
        "mode " + std::to_string(index + 1) + ": ");
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

double l2(std::span<const cplx> v)
{
    long double s = 0.0L;
    for (cplx c : v)
        s += static_cast<long double>(std::norm(c));
    return static_cast<double>(std::sqrt(s));
}

} // namespace

std::string_view to_string(OperatorKind k)
{
    return k == OperatorKind::laplacian_1d_dirichlet ? "laplacian_1d" : "diagonal";
}

SpectralOperator SpectralOperator::diagonal(std::vector<double> eigenvalues)
{
    SpectralOperator op;
    op.eig_ = std::move(eigenvalues);
    op.validate();
    return op;
}

SpectralOperator SpectralOperator::laplacian_1d(double length, int K)
{
    if (!(length > 0.0) || !std::isfinite(length))
        throw InvalidParameter("interval length must be positive");
    if (K < 1)
        throw InvalidParameter("K must be at least 1");
    SpectralOperator op;
    op.kind_ = OperatorKind::laplacian_1d_dirichlet;
    op.length_ = length;
    op.eig_.resize(K);
    for (int k = 1; k <= K; ++k)
        op.eig_[k - 1] = std::pow(k * pi / length, 2);
    return op;
}

double SpectralOperator::eigenfunction(int k, double x) const
{
    if (kind_ != OperatorKind::laplacian_1d_dirichlet)
        throw WrongOperatorKind("eigenfunctions are only available for the 1D Laplacian");
    if (k < 1 || k > K())
        throw InvalidParameter("mode number out of range");
    return std::sqrt(2.0 / length_) * std::sin(k * pi * x / length_);
}

void SpectralOperator::validate() const
{
    if (eig_.empty())
        throw InvalidParameter("operator needs at least one eigenvalue");
    for (std::size_t k = 0; k < eig_.size(); ++k) {
        if (!(eig_[k] > 0.0) || !std::isfinite(eig_[k]))
            throw InvalidParameter("eigenvalue " + std::to_string(k + 1) + " must be positive");
        if (k > 0 && eig_[k] < eig_[k - 1])
            throw InvalidParameter("eigenvalues must be nondecreasing");
    }
}

void TelegraphProblem::validate() const
{
    if (!(rho > 0.0) || !(rho < 1.0))
        throw InvalidParameter("rho must lie in (0, 1)");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidParameter("alpha must be positive");
    if (!(T > 0.0) || !std::isfinite(T))
        throw InvalidParameter("T must be positive");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw InvalidParameter("epsilon must lie in (0, 1)");
    op.validate();
    const std::size_t K = op.K();
    if (phi0.size() != K || phi1.size() != K)
        throw InvalidParameter("phi0 and phi1 need one coefficient per mode");
    if (!f.empty() && f.size() != K)
        throw InvalidParameter("forcing needs one entry per mode");
    for (std::size_t k = 0; k < K; ++k)
        if (!finite(phi0[k]) || !finite(phi1[k]))
            throw InvalidParameter("initial coefficients must be finite");
}

ScalarProblem TelegraphProblem::mode(int index) const
{
    ScalarProblem s;
    s.rho = rho;
    s.alpha = alpha;
    s.lambda = op.eigenvalues().at(index);
    s.phi0 = phi0.at(index);
    s.phi1 = phi1.at(index);
    if (!f.empty())
        s.g = f.at(index);
    s.T = T;
    return s;
}

SolutionField::SolutionField(TelegraphProblem p, std::vector<ScalarSolution> modes, SolveOptions opts)
    : p_(std::move(p)), modes_(std::move(modes)), opts_(opts)
{
}

std::vector<int> SolutionField::critical_modes() const
{
    std::vector<int> out;
    for (int k = 0; k < K(); ++k)
        if (modes_[k].case_tag() == CaseTag::critical)
            out.push_back(k + 1);
    return out;
}

ModalState SolutionField::state(double t) const
{
    ModalState s{t, std::vector<cplx>(K()), std::vector<cplx>(K()), std::vector<cplx>(K())};
    parallel_for(K(), thread_count(opts_.threads), [&](int k) {
        try {
            s.u[k] = modes_[k].y(t);
            if (t > 0.0) {
                s.du[k] = modes_[k].dy_rho(t);
                s.d2u[k] = modes_[k].d2y_rho(t);
            } else {
                const auto& m = modes_[k].problem();
                s.du[k] = m.phi0;
                s.d2u[k] = m.g(0.0) - 2.0 * m.alpha * m.phi0 - m.lambda * m.phi1;
            }
        } catch (...) {
            rethrow_for_mode(k);
        }
    });
    return s;
}

FieldTable SolutionField::tabulate(std::span<const double> times) const
{
    const std::size_t nt = times.size();
    FieldTable tab;
    tab.times.assign(times.begin(), times.end());
    tab.u.assign(K(), std::vector<cplx>(nt));
    tab.du = tab.u;
    tab.d2u = tab.u;
    parallel_for(K(), thread_count(opts_.threads), [&](int k) {
        try {
            const auto& sol = modes_[k];
            const auto& m = sol.problem();
            for (std::size_t j = 0; j < nt; ++j) {
                double t = times[j];
                tab.u[k][j] = sol.y(t);
                if (t > 0.0) {
                    tab.du[k][j] = sol.dy_rho(t);
                    tab.d2u[k][j] = m.g(t) - 2.0 * m.alpha * tab.du[k][j] - m.lambda * tab.u[k][j];
                } else {
                    tab.du[k][j] = m.phi0;
                    tab.d2u[k][j] = m.g(0.0) - 2.0 * m.alpha * m.phi0 - m.lambda * m.phi1;
                }
            }
        } catch (...) {
            rethrow_for_mode(k);
        }
    });
    return tab;
}

FieldNorms SolutionField::norms(const ModalState& s) const
{
    const auto& eig = p_.op.eigenvalues();
    return {l2(s.u), norm_tau(s.u, eig, 1.0).value, l2(s.du), l2(s.d2u)};
}

double SolutionField::identity_defect(const ModalState& s) const
{
    double worst = 0.0;
    for (int k = 0; k < K(); ++k) {
        const auto& m = modes_[k].problem();
        cplx g = s.t > 0.0 || !m.g.is_zero() ? m.g(s.t) : cplx(0.0);
        worst = std::max(worst, std::abs(s.d2u[k] + 2.0 * m.alpha * s.du[k] + m.lambda * s.u[k] - g));
    }
    return worst;
}

SolutionField solve(const TelegraphProblem& p, const SolveOptions& opts)
{
    p.validate();
    std::vector<ScalarSolution> modes;
    modes.reserve(p.op.K());
    for (int k = 0; k < p.op.K(); ++k) {
        try {
            modes.push_back(solve_scalar(p.mode(k), opts.quadrature, opts.tol_crit));
        } catch (...) {
            rethrow_for_mode(k);
        }
    }
    return SolutionField(p, std::move(modes), opts);
}

SobolevNorm norm_tau(std::span<const cplx> coeffs, std::span<const double> eigenvalues, double tau)
{
    if (coeffs.size() > eigenvalues.size())
        throw InvalidParameter("more coefficients than eigenvalues");
    long double s = 0.0L;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        s += std::pow(static_cast<long double>(eigenvalues[k]), 2.0L * tau) *
             static_cast<long double>(std::norm(coeffs[k]));
    return {tau, static_cast<double>(std::sqrt(s))};
}

std::vector<double> dyadic_times(double T, int levels)
{
    std::vector<double> out;
    for (int j = 0; j <= levels; ++j)
        out.push_back(std::ldexp(T, -j));
    return out;
}

StabilityReport stability_report(const SolutionField& field, std::span<const double> times)
{
    const auto& p = field.problem();
    const auto& eig = p.op.eigenvalues();
    const double data = l2(p.phi0) + norm_tau(p.phi1, eig, 0.5).value;

    double fmax = 0.0;
    if (!p.f.empty()) {
        std::vector<double> probe(times.begin(), times.end());
        const int n = 512;
        for (int i = 0; i <= n; ++i)
            probe.push_back(p.T * i / n);
        std::vector<cplx> fk(p.op.K());
        for (double t : probe) {
            for (int k = 0; k < p.op.K(); ++k)
                fk[k] = p.f[k](t);
            fmax = std::max(fmax, norm_tau(fk, eig, p.epsilon).value);
        }
    }

    StabilityReport rep;
    auto tab = field.tabulate(times);
    std::vector<cplx> u(field.K()), du(field.K()), d2u(field.K());
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double t = times[j];
        for (int k = 0; k < field.K(); ++k) {
            u[k] = tab.u[k][j];
            du[k] = tab.du[k][j];
            d2u[k] = tab.d2u[k][j];
        }
        double lhs = l2(d2u) + l2(du) + norm_tau(u, eig, 1.0).value;
        double rhs = std::pow(t, -p.rho) * data + fmax;
        double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        rep.points.push_back({t, lhs, rhs, ratio});
        if (ratio > rep.sup_ratio || j == 0) {
            rep.sup_ratio = ratio;
            rep.t_at_sup = t;
        }
        rep.sup_weighted_lhs = std::max(rep.sup_weighted_lhs, lhs * std::pow(t, p.rho));
    }

    // growth check on the smallest times of the grid
    std::vector<StabilityPoint> pts = rep.points;
    std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.t < b.t; });
    std::vector<double> lt, lr;
    for (std::size_t i = 0; i < pts.size() && lt.size() < 6; ++i) {
        if (pts[i].t > 0.0 && pts[i].ratio > 0.0) {
            lt.push_back(pts[i].t);
            lr.push_back(pts[i].ratio);
        }
    }
    rep.bounded = std::isfinite(rep.sup_ratio);
    if (lt.size() >= 3)
        rep.bounded = rep.bounded && observed_order(lt, lr) > -0.05;
    return rep;
}

PhysicalField assemble_physical(const SolutionField& field, std::span<const double> x,
                                std::span<const double> times)
{
    const auto& op = field.problem().op;
    if (op.kind() != OperatorKind::laplacian_1d_dirichlet)
        throw WrongOperatorKind("physical assembly needs the 1D Dirichlet Laplacian");
    PhysicalField out;
    out.x.assign(x.begin(), x.end());
    out.t.assign(times.begin(), times.end());
    out.u.assign(x.size() * times.size(), 0.0);

    const int K = field.K();
    std::vector<double> basis(static_cast<std::size_t>(K) * x.size());
    for (int k = 0; k < K; ++k)
        for (std::size_t i = 0; i < x.size(); ++i) {
            double xi = x[i];
            bool boundary = xi == 0.0 || xi == op.length();
            basis[k * x.size() + i] = boundary ? 0.0 : op.eigenfunction(k + 1, xi);
        }

    auto tab = field.tabulate(times);
    for (std::size_t j = 0; j < times.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i) {
            cplx s = 0.0;
            for (int k = 0; k < K; ++k)
                s += tab.u[k][j] * basis[k * x.size() + i];
            out.u[j * x.size() + i] = s;
        }
    return out;
}

} // namespace fractel
