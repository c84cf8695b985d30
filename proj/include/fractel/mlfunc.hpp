#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "fractel/errors.hpp"

namespace fractel {

using cplx = std::complex<double>;

enum class Regime { series, asymptotic, contour };

std::string_view to_string(Regime r);

struct MLResult {
    cplx value;
    double est_abs_error = 0.0;
    Regime regime = Regime::series;
};

/// 1/Gamma(x), zero at the poles of Gamma.
double rgamma(double x);

/// Two-parameter Mittag-Leffler function for a fixed (rho, mu).
/// Coefficient tables are built once, so repeated evaluation is cheap.
class MittagLeffler {
public:
    MittagLeffler(double rho, double mu, double tol = 1e-12);

    MLResult operator()(cplx z) const;

    std::optional<MLResult> series(cplx z) const;
    std::optional<MLResult> asymptotic(cplx z) const;
    MLResult contour(cplx z) const;

    double rho() const { return rho_; }
    double mu() const { return mu_; }
    double tol() const { return tol_; }

private:
    double rho_, mu_, tol_;
    std::vector<double> series_coef_;
    std::vector<double> asym_coef_;
    std::vector<double> asym_env_;
};

MLResult ml(double rho, double mu, cplx z, double tol = 1e-12);

/// Three-parameter function with gamma = 2, reduced to two-parameter values.
MLResult ml_prabhakar2(double rho, double mu, cplx z, double tol = 1e-12);

/// Same reduction for repeated use at fixed (rho, mu).
class Prabhakar2 {
public:
    Prabhakar2(double rho, double mu, double tol = 1e-12);
    MLResult operator()(cplx z) const;

private:
    double rho_, mu_;
    MittagLeffler lower_, same_;
};

/// Ratio |E_{rho,mu}(z)| (1 + |z|) for z in the sector |arg z| >= beta,
/// with pi rho / 2 < beta < min(pi, pi rho).
double ml_bound_check(double rho, double mu, cplx z, double beta);
double ml_bound_check(double rho, double mu, cplx z);

double default_sector_angle(double rho);

} // namespace fractel
