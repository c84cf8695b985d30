#pragma once

#include <functional>
#include <vector>

#include "fractel/mlfunc.hpp"

namespace fractel {

/// Forcing a + b exp(-c t), transform a/s + b/(s + c).
struct ExpForcing {
    cplx a = 0.0;
    cplx b = 0.0;
    double c = 1.0;

    cplx operator()(double t) const { return a + b * std::exp(-c * t); }
    cplx transform(cplx s) const;
    bool is_zero() const { return a == cplx(0.0) && b == cplx(0.0); }
};

/// Fixed Talbot inversion (Abate-Valko contour). Singularities must lie to the
/// left of the contour, except for isolated poles, which `talbot_outside` detects.
cplx talbot_invert(const std::function<cplx(cplx)>& F, double t, int M = 32);

/// True when s lies to the right of (is not enclosed by) the contour used at (t, M).
bool talbot_outside(cplx s, double t, int M = 32);

struct LaplaceValue {
    cplx value;
    double est_error;
};

/// Inverse transform of the modal problem, built from
///   Y(s) = [G(s) + s^{2rho-1} phi1 + s^{rho-1} (phi0 + 2 alpha phi1)] / (s^{2rho} + 2 alpha s^rho + lambda)
/// with residues added for principal-sheet poles the contour misses.
class ModalLaplace {
public:
    ModalLaplace(double rho, double alpha, double lambda, cplx phi0, cplx phi1, ExpForcing g);

    LaplaceValue y(double t) const;
    LaplaceValue dy_rho(double t) const;

    /// principal-sheet poles of Y
    const std::vector<cplx>& poles() const { return poles_; }

private:
    std::complex<long double> numerator(std::complex<long double> s) const;
    LaplaceValue invert(bool derivative, double t) const;

    double rho_, alpha_, lambda_;
    cplx phi0_, phi1_;
    ExpForcing g_;
    std::vector<cplx> poles_, roots_;
};

} // namespace fractel
