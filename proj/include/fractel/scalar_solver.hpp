#pragma once

#include <memory>
#include <string_view>

#include "fractel/forcing.hpp"
#include "fractel/kernel.hpp"

namespace fractel {

enum class CaseTag { distinct, critical };

std::string_view to_string(CaseTag c);

struct QuadratureSpec {
    double ml_tol = 1e-12;
    ConvolutionSpec convolution{};
};

/// One mode: (D^rho)^2 y + 2 alpha D^rho y + lambda y = g, y(0) = phi1, D^rho y(0) = phi0.
struct ScalarProblem {
    double rho = 0.5;
    double alpha = 1.0;
    double lambda = 1.0;
    cplx phi0 = 0.0;
    cplx phi1 = 0.0;
    Forcing g;
    double T = 1.0;

    void validate() const;
};

constexpr double default_tol_crit = 1e-8;

CaseTag classify_case(double alpha, double lambda, double tol_crit = default_tol_crit);

struct ScalarSamples {
    TimeGrid grid;
    std::vector<cplx> y;
    std::vector<cplx> dy;

    SampledTrajectory y_traj() const { return {grid, y}; }
    SampledTrajectory dy_traj() const { return {grid, dy}; }
};

class ScalarSolution {
public:
    CaseTag case_tag() const;
    const ScalarProblem& problem() const;
    const QuadratureSpec& quadrature() const;

    cplx y(double t) const;
    /// analytic Caputo derivative, t in (0, T]
    cplx dy_rho(double t) const;
    /// (D^rho)^2 y from the equation itself
    cplx d2y_rho(double t) const;

    /// y and D^rho y on the uniform grid with n intervals; convolutions use
    /// product integration against the piecewise-linear interpolant of g.
    ScalarSamples sample(int n) const;

    struct Impl;

private:
    explicit ScalarSolution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    friend ScalarSolution make_scalar_solution(const ScalarProblem&, const QuadratureSpec&, CaseTag);

    std::shared_ptr<const Impl> impl_;
};

ScalarSolution solve_scalar_distinct(const ScalarProblem& p, const QuadratureSpec& spec = {},
                                     double tol_crit = default_tol_crit);
ScalarSolution solve_scalar_critical(const ScalarProblem& p, const QuadratureSpec& spec = {},
                                     double tol_crit = default_tol_crit);
ScalarSolution solve_scalar(const ScalarProblem& p, const QuadratureSpec& spec = {},
                            double tol_crit = default_tol_crit);

cplx dy_rho(const ScalarSolution& sol, double t);

/// u = k * f for the kernel k, on [0, T].
class KernelEvaluator {
public:
    KernelEvaluator(MLKernel k, Forcing f, double T, ConvolutionSpec spec = {});

    cplx operator()(double t) const;
    SampledTrajectory sample(int n) const;

private:
    MLKernel k_;
    Forcing f_;
    double T_;
    ConvolutionSpec spec_;
};

/// D^rho u - lambda u = f, u(0) = 0.
KernelEvaluator solve_relaxation(double rho, cplx lambda, Forcing f, double T,
                                 const QuadratureSpec& spec = {});

/// D^rho u + 2 alpha u + alpha^2 J^rho u = J^rho g, u(0) = 0.
KernelEvaluator solve_integro(double rho, double alpha, Forcing g, double T,
                              const QuadratureSpec& spec = {});

} // namespace fractel
