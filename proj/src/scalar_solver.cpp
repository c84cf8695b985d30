#include "fractel/scalar_solver.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace fractel {

std::string_view to_string(CaseTag c) { return c == CaseTag::critical ? "critical" : "distinct"; }

void ScalarProblem::validate() const
{
    if (!(rho > 0.0) || !(rho < 1.0))
        throw InvalidParameter("rho must lie in (0, 1)");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidParameter("alpha must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidParameter("lambda must be positive");
    if (!(T > 0.0) || !std::isfinite(T))
        throw InvalidParameter("T must be positive");
    for (cplx v : {phi0, phi1})
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidParameter("initial data must be finite");
}

CaseTag classify_case(double alpha, double lambda, double tol_crit)
{
    double a2 = alpha * alpha;
    return std::abs(a2 - lambda) <= tol_crit * std::max(a2, lambda) ? CaseTag::critical
                                                                    : CaseTag::distinct;
}

struct ScalarSolution::Impl {
    ScalarProblem p;
    QuadratureSpec spec;
    CaseTag tag;
    bool real_data;

    // distinct case: y = am E(-sm t^rho) + ap E(-sp t^rho) + (km*g - kp*g) / (2 r)
    cplx r, sm, sp, am, ap;
    std::optional<MittagLeffler> e1;
    std::optional<MLKernel> km, kp;

    // critical case
    std::optional<Prabhakar2> e2_1, e2_1rho;
    std::optional<MLKernel> k2, k3, jr;

    Impl(const ScalarProblem& prob, const QuadratureSpec& s, CaseTag c)
        : p(prob), spec(s), tag(c),
          real_data(prob.phi0.imag() == 0.0 && prob.phi1.imag() == 0.0 && prob.g.real_valued())
    {
        const double rho = p.rho, alpha = p.alpha, tol = spec.ml_tol;
        e1.emplace(rho, 1.0, tol);
        if (tag == CaseTag::distinct) {
            r = std::sqrt(cplx(alpha * alpha - p.lambda, 0.0));
            sm = alpha - r;
            sp = alpha + r;
            am = ((r + alpha) * p.phi1 + p.phi0) / (2.0 * r);
            ap = ((r - alpha) * p.phi1 - p.phi0) / (2.0 * r);
            km.emplace(rho, rho, 1, -sm, tol);
            kp.emplace(rho, rho, 1, -sp, tol);
        } else {
            e2_1.emplace(rho, 1.0, tol);
            e2_1rho.emplace(rho, 1.0 + rho, tol);
            k2.emplace(rho, 2.0 * rho, 2, -alpha, tol);
            k3.emplace(rho, 3.0 * rho, 2, -alpha, tol);
            jr.emplace(rho, rho, 1, 0.0, tol);
        }
    }

    cplx conv(const MLKernel& k, double t) const { return k.convolve(p.g, t, spec.convolution); }

    cplx finish(cplx v) const
    {
        if (!real_data)
            return v;
        if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v)))
            throw std::logic_error("real data produced a complex solution value");
        return {v.real(), 0.0};
    }

    cplx ml1(cplx z) const { return (*e1)(z).value; }

    cplx y(double t) const
    {
        if (t == 0.0)
            return p.phi1;
        const double tr = std::pow(t, p.rho);
        if (tag == CaseTag::distinct) {
            cplx v = am * ml1(-sm * tr) + ap * ml1(-sp * tr);
            if (!p.g.is_zero())
                v += (conv(*km, t) - conv(*kp, t)) / (2.0 * r);
            return finish(v);
        }
        const double alpha = p.alpha;
        cplx v = ml1(-alpha * tr) * p.phi1 + tr * (*e2_1rho)(-alpha * tr).value * (alpha * p.phi1 + p.phi0);
        if (!p.g.is_zero())
            v += conv(*k2, t);
        return finish(v);
    }

    cplx dy(double t) const
    {
        const double tr = std::pow(t, p.rho);
        if (tag == CaseTag::distinct) {
            cplx v = -sm * am * ml1(-sm * tr) - sp * ap * ml1(-sp * tr);
            if (!p.g.is_zero())
                v += (-sm * conv(*km, t) + sp * conv(*kp, t)) / (2.0 * r);
            return finish(v);
        }
        const double alpha = p.alpha;
        cplx v = -alpha * alpha * tr * (*e2_1rho)(-alpha * tr).value * p.phi1 +
                 (*e2_1)(-alpha * tr).value * p.phi0;
        if (!p.g.is_zero())
            v += -2.0 * alpha * conv(*k2, t) - alpha * alpha * conv(*k3, t) + conv(*jr, t);
        return finish(v);
    }

    std::vector<cplx> conv_grid(const MLKernel& k, const TimeGrid& grid,
                                const std::vector<cplx>& g) const
    {
        if (auto c = p.g.constant_value()) {
            std::vector<cplx> out(grid.n + 1);
            for (int i = 0; i <= grid.n; ++i)
                out[i] = *c * k.primitive(grid.t(i));
            return out;
        }
        return k.convolve_grid(g, grid.h());
    }

    ScalarSamples sample(int n) const
    {
        TimeGrid grid{p.T, n};
        grid.validate();
        ScalarSamples out{grid, std::vector<cplx>(n + 1), std::vector<cplx>(n + 1)};
        const bool forced = !p.g.is_zero();
        std::vector<cplx> g = forced ? p.g.sample(grid) : std::vector<cplx>{};
        const double alpha = p.alpha;

        if (tag == CaseTag::distinct) {
            std::vector<cplx> cm, cp;
            if (forced) {
                cm = conv_grid(*km, grid, g);
                cp = conv_grid(*kp, grid, g);
            }
            for (int i = 0; i <= n; ++i) {
                const double tr = std::pow(grid.t(i), p.rho);
                cplx em = ml1(-sm * tr), ep = ml1(-sp * tr);
                cplx y = am * em + ap * ep;
                cplx d = -sm * am * em - sp * ap * ep;
                if (forced) {
                    y += (cm[i] - cp[i]) / (2.0 * r);
                    d += (-sm * cm[i] + sp * cp[i]) / (2.0 * r);
                }
                out.y[i] = finish(y);
                out.dy[i] = finish(d);
            }
        } else {
            std::vector<cplx> c2, c3;
            SampledTrajectory jg;
            if (forced) {
                c2 = conv_grid(*k2, grid, g);
                c3 = conv_grid(*k3, grid, g);
                jg = frac_integral(SampledTrajectory{grid, g}, p.rho);
            }
            for (int i = 0; i <= n; ++i) {
                const double tr = std::pow(grid.t(i), p.rho);
                cplx e2r = (*e2_1rho)(-alpha * tr).value;
                cplx y = ml1(-alpha * tr) * p.phi1 + tr * e2r * (alpha * p.phi1 + p.phi0);
                cplx d = -alpha * alpha * tr * e2r * p.phi1 + (*e2_1)(-alpha * tr).value * p.phi0;
                if (forced) {
                    y += c2[i];
                    d += -2.0 * alpha * c2[i] - alpha * alpha * c3[i] + jg.values[i];
                }
                out.y[i] = finish(y);
                out.dy[i] = finish(d);
            }
        }
        out.y[0] = p.phi1;
        out.dy[0] = p.phi0;
        return out;
    }
};

ScalarSolution make_scalar_solution(const ScalarProblem& p, const QuadratureSpec& spec, CaseTag tag)
{
    return ScalarSolution(std::make_shared<const ScalarSolution::Impl>(p, spec, tag));
}

CaseTag ScalarSolution::case_tag() const { return impl_->tag; }
const ScalarProblem& ScalarSolution::problem() const { return impl_->p; }
const QuadratureSpec& ScalarSolution::quadrature() const { return impl_->spec; }

namespace {

void check_time(const ScalarProblem& p, double t, bool open_left)
{
    if (!(t <= p.T * (1.0 + 1e-12)) || (open_left ? !(t > 0.0) : !(t >= 0.0)))
        throw EvaluationOutOfDomain("time " + std::to_string(t) + " outside the solution interval");
}

} // namespace

cplx ScalarSolution::y(double t) const
{
    check_time(impl_->p, t, false);
    return impl_->y(t);
}

cplx ScalarSolution::dy_rho(double t) const
{
    check_time(impl_->p, t, true);
    return impl_->dy(t);
}

cplx ScalarSolution::d2y_rho(double t) const
{
    check_time(impl_->p, t, true);
    const auto& p = impl_->p;
    return p.g(t) - 2.0 * p.alpha * impl_->dy(t) - p.lambda * impl_->y(t);
}

ScalarSamples ScalarSolution::sample(int n) const { return impl_->sample(n); }

cplx dy_rho(const ScalarSolution& sol, double t) { return sol.dy_rho(t); }

ScalarSolution solve_scalar_distinct(const ScalarProblem& p, const QuadratureSpec& spec,
                                     double tol_crit)
{
    p.validate();
    if (classify_case(p.alpha, p.lambda, tol_crit) != CaseTag::distinct)
        throw CaseMismatch("alpha^2 and lambda coincide; use the critical branch");
    return make_scalar_solution(p, spec, CaseTag::distinct);
}

ScalarSolution solve_scalar_critical(const ScalarProblem& p, const QuadratureSpec& spec,
                                     double tol_crit)
{
    p.validate();
    if (classify_case(p.alpha, p.lambda, tol_crit) != CaseTag::critical)
        throw CaseMismatch("alpha^2 differs from lambda; use the distinct branch");
    return make_scalar_solution(p, spec, CaseTag::critical);
}

ScalarSolution solve_scalar(const ScalarProblem& p, const QuadratureSpec& spec, double tol_crit)
{
    p.validate();
    return make_scalar_solution(p, spec, classify_case(p.alpha, p.lambda, tol_crit));
}

KernelEvaluator::KernelEvaluator(MLKernel k, Forcing f, double T, ConvolutionSpec spec)
    : k_(std::move(k)), f_(std::move(f)), T_(T), spec_(spec)
{
    if (!(T > 0.0))
        throw InvalidParameter("T must be positive");
}

cplx KernelEvaluator::operator()(double t) const
{
    if (!(t >= 0.0) || t > T_ * (1.0 + 1e-12))
        throw EvaluationOutOfDomain("time outside the evaluator interval");
    return k_.convolve(f_, t, spec_);
}

SampledTrajectory KernelEvaluator::sample(int n) const
{
    TimeGrid grid{T_, n};
    grid.validate();
    SampledTrajectory out{grid, std::vector<cplx>(n + 1, 0.0)};
    if (f_.is_zero())
        return out;
    if (auto c = f_.constant_value()) {
        for (int i = 0; i <= n; ++i)
            out.values[i] = *c * k_.primitive(grid.t(i));
        return out;
    }
    out.values = k_.convolve_grid(f_.sample(grid), grid.h());
    return out;
}

KernelEvaluator solve_relaxation(double rho, cplx lambda, Forcing f, double T,
                                 const QuadratureSpec& spec)
{
    return KernelEvaluator(MLKernel(rho, rho, 1, lambda, spec.ml_tol), std::move(f), T,
                           spec.convolution);
}

KernelEvaluator solve_integro(double rho, double alpha, Forcing g, double T,
                              const QuadratureSpec& spec)
{
    if (!(alpha >= 0.0))
        throw InvalidParameter("alpha must be non-negative");
    return KernelEvaluator(MLKernel(rho, 2.0 * rho, 2, -alpha, spec.ml_tol), std::move(g), T,
                           spec.convolution);
}

} // namespace fractel
