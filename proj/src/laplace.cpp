#include "fractel/laplace.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fractel {

namespace {

using lcplx = std::complex<long double>;
constexpr long double pi = std::numbers::pi_v<long double>;

long double contour_r(double t, int M) { return 2.0L * M / (5.0L * t); }

template <class C, class F>
C talbot_sum(const F& fn, double t, int M)
{
    using R = typename C::value_type;
    const R r = static_cast<R>(contour_r(t, M));
    const R tt = t;
    C acc = R(0.5) * fn(C(r)) * std::exp(r * tt);
    for (int k = 1; k < M; ++k) {
        R th = k * static_cast<R>(pi) / M;
        R cot = std::cos(th) / std::sin(th);
        C s(r * th * cot, r * th);
        R sigma = th + (th * cot - 1) * cot;
        C w(1, sigma);
        C upper = std::exp(tt * s) * fn(s) * w;
        C lower = std::exp(tt * std::conj(s)) * fn(std::conj(s)) * std::conj(w);
        acc += R(0.5) * (upper + lower);
    }
    return acc * (r / M);
}

} // namespace

cplx ExpForcing::transform(cplx s) const
{
    cplx out = 0.0;
    if (a != cplx(0.0))
        out += a / s;
    if (b != cplx(0.0))
        out += b / (s + c);
    return out;
}

cplx talbot_invert(const std::function<cplx(cplx)>& F, double t, int M)
{
    if (!(t > 0.0) || M < 2)
        throw InvalidParameter("talbot inversion needs t > 0 and M >= 2");
    return talbot_sum<cplx>(F, t, M);
}

bool talbot_outside(cplx s, double t, int M)
{
    const double r = static_cast<double>(contour_r(t, M));
    double y = std::abs(s.imag());
    if (y >= r * pi)
        return true;
    if (y == 0.0)
        return s.real() >= r;
    double th = y / r;
    return s.real() >= r * th * std::cos(th) / std::sin(th);
}

ModalLaplace::ModalLaplace(double rho, double alpha, double lambda, cplx phi0, cplx phi1, ExpForcing g)
    : rho_(rho), alpha_(alpha), lambda_(lambda), phi0_(phi0), phi1_(phi1), g_(g)
{
    cplx d = std::sqrt(cplx(alpha * alpha - lambda, 0.0));
    if (d != cplx(0.0)) {
        for (cplx w : {-alpha + d, -alpha - d}) {
            if (std::abs(std::arg(w)) < rho * pi) {
                roots_.push_back(w);
                poles_.push_back(std::pow(std::abs(w), 1.0 / rho) *
                                 std::exp(cplx(0.0, std::arg(w) / rho)));
            }
        }
    }
}

lcplx ModalLaplace::numerator(lcplx s) const
{
    const long double rho = rho_;
    lcplx sr = std::pow(s, rho);
    lcplx gs = 0.0L;
    if (g_.a != cplx(0.0))
        gs += lcplx(g_.a) / s;
    if (g_.b != cplx(0.0))
        gs += lcplx(g_.b) / (s + static_cast<long double>(g_.c));
    return gs + (sr * sr / s) * lcplx(phi1_) + (sr / s) * lcplx(phi0_ + 2.0 * alpha_ * phi1_);
}

LaplaceValue ModalLaplace::invert(bool derivative, double t) const
{
    if (!(t > 0.0))
        throw InvalidParameter("laplace oracle needs t > 0");
    const long double rho = rho_, alpha = alpha_, lambda = lambda_;
    auto num = [&](lcplx s) {
        lcplx n = numerator(s);
        return derivative ? std::pow(s, rho) * n : n;
    };
    auto F = [&](lcplx s) {
        lcplx w = std::pow(s, rho);
        lcplx v = num(s) / (w * w + 2.0L * alpha * w + lambda);
        if (derivative)
            v -= std::pow(s, rho - 1.0L) * lcplx(phi1_);
        return v;
    };
    auto with_residues = [&](int M) {
        lcplx v = talbot_sum<lcplx>(F, t, M);
        for (std::size_t i = 0; i < poles_.size(); ++i) {
            lcplx s = poles_[i], w = roots_[i];
            if (!talbot_outside(poles_[i], t, M))
                continue;
            lcplx dP = 2.0L * w + 2.0L * alpha;
            v += std::exp(s * static_cast<long double>(t)) * num(s) /
                 (dP * rho * std::pow(s, rho - 1.0L));
        }
        return cplx(v);
    };
    // walk M upwards in long double and keep the most self-consistent pair
    cplx prev = with_residues(24);
    LaplaceValue best{prev, std::numeric_limits<double>::infinity()};
    for (int M = 32; M <= 112; M += 8) {
        cplx v = with_residues(M);
        double e = std::abs(v - prev);
        if (e < best.est_error)
            best = {v, e};
        if (best.est_error <= 1e-14 * (1.0 + std::abs(v)))
            break;
        prev = v;
    }
    return best;
}

LaplaceValue ModalLaplace::y(double t) const { return invert(false, t); }

LaplaceValue ModalLaplace::dy_rho(double t) const { return invert(true, t); }

} // namespace fractel
