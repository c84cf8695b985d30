#pragma once

#include <span>
#include <vector>

#include "fractel/scalar_solver.hpp"

namespace fractel {

enum class OperatorKind { diagonal_explicit, laplacian_1d_dirichlet };

std::string_view to_string(OperatorKind k);

/// Diagonal model of a self-adjoint positive operator truncated to K modes.
class SpectralOperator {
public:
    static SpectralOperator diagonal(std::vector<double> eigenvalues);
    /// -d^2/dx^2 on (0, L) with Dirichlet ends: lambda_k = (k pi / L)^2
    static SpectralOperator laplacian_1d(double length, int K);

    OperatorKind kind() const { return kind_; }
    int K() const { return static_cast<int>(eig_.size()); }
    const std::vector<double>& eigenvalues() const { return eig_; }
    double length() const { return length_; }

    /// sqrt(2/L) sin(k pi x / L) for k = 1..K; laplacian only
    double eigenfunction(int k, double x) const;

    void validate() const;

private:
    OperatorKind kind_ = OperatorKind::diagonal_explicit;
    std::vector<double> eig_;
    double length_ = 0.0;
};

struct TelegraphProblem {
    double rho = 0.5;
    double alpha = 1.0;
    double T = 1.0;
    SpectralOperator op;
    std::vector<cplx> phi0, phi1;
    /// one forcing per mode; empty means f = 0
    std::vector<Forcing> f;
    double epsilon = 0.5;

    void validate() const;
    ScalarProblem mode(int index) const;
};

struct SolveOptions {
    QuadratureSpec quadrature{};
    double tol_crit = default_tol_crit;
    /// 1 = serial, 0 = hardware concurrency; FRACTEL_THREADS caps either
    int threads = 1;
};

/// Modal coefficients of u, D^rho u and (D^rho)^2 u at one time.
struct ModalState {
    double t = 0.0;
    std::vector<cplx> u, du, d2u;
};

/// Same, tabulated: index [mode][time].
struct FieldTable {
    std::vector<double> times;
    std::vector<std::vector<cplx>> u, du, d2u;
};

struct FieldNorms {
    double u = 0.0;
    double Au = 0.0;
    double du = 0.0;
    double d2u = 0.0;
};

class SolutionField {
public:
    SolutionField(TelegraphProblem p, std::vector<ScalarSolution> modes, SolveOptions opts);

    const TelegraphProblem& problem() const { return p_; }
    const SolveOptions& options() const { return opts_; }
    int K() const { return static_cast<int>(modes_.size()); }
    const ScalarSolution& mode(int index) const { return modes_.at(index); }
    /// 1-based numbers of modes solved with the critical formula
    std::vector<int> critical_modes() const;

    ModalState state(double t) const;
    FieldTable tabulate(std::span<const double> times) const;

    /// H norms of u, Au, D^rho u and (D^rho)^2 u = f - 2 alpha D^rho u - A u
    FieldNorms norms(const ModalState& s) const;
    /// max over modes of |(D^rho)^2 u + 2 alpha D^rho u + A u - f|, zero up to rounding
    double identity_defect(const ModalState& s) const;

private:
    TelegraphProblem p_;
    std::vector<ScalarSolution> modes_;
    SolveOptions opts_;
};

SolutionField solve(const TelegraphProblem& p, const SolveOptions& opts = {});

struct SobolevNorm {
    double tau = 0.0;
    double value = 0.0;
};

/// (sum lambda_k^{2 tau} |h_k|^2)^{1/2}
SobolevNorm norm_tau(std::span<const cplx> coeffs, std::span<const double> eigenvalues, double tau);

struct StabilityPoint {
    double t;
    double lhs;
    double rhs;
    double ratio;
};

struct StabilityReport {
    std::vector<StabilityPoint> points;
    double sup_ratio = 0.0;
    double t_at_sup = 0.0;
    /// sup of lhs(t) t^rho
    double sup_weighted_lhs = 0.0;
    /// false when the ratio grows as t decreases along the grid
    bool bounded = true;
};

/// Dyadic times T 2^{-j}, j = 0..levels.
std::vector<double> dyadic_times(double T, int levels = 20);

/// lhs = ||(D^rho)^2 u|| + ||D^rho u|| + ||A u||,
/// rhs = t^{-rho} (||phi0|| + ||phi1||_{1/2}) + max_t ||f(t)||_epsilon
StabilityReport stability_report(const SolutionField& field, std::span<const double> times);

struct PhysicalField {
    std::vector<double> x, t;
    /// u(x_i, t_j) at index j * x.size() + i
    std::vector<cplx> u;

    cplx at(std::size_t i, std::size_t j) const { return u[j * x.size() + i]; }
};

PhysicalField assemble_physical(const SolutionField& field, std::span<const double> x,
                                std::span<const double> times);

} // namespace fractel
