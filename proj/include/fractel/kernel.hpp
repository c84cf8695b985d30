#pragma once

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "fractel/forcing.hpp"
#include "fractel/mlfunc.hpp"

namespace fractel {

struct ConvolutionSpec {
    /// uniform panels used for smooth callables away from the kernel singularity
    int smooth_panels = 16;
    /// dyadic refinement depth towards the singularity
    int dyadic_levels = 24;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
const std::vector<std::pair<double, double>>& gauss_legendre(int q);

/// Kernel k(s) = s^{beta-1} E^gamma_{rho,beta}(a s^rho), gamma in {1, 2}.
class MLKernel {
public:
    MLKernel(double rho, double beta, int gamma, cplx a, double tol = 1e-12);

    cplx value(double s) const;
    /// int_0^s k
    cplx primitive(double s) const;
    /// int_0^s int_0^u k
    cplx second_primitive(double s) const;

    /// {int k(s)(s1 - s)/L ds, int k(s)(s - s0)/L ds} over [s0, s1], L = s1 - s0
    std::pair<cplx, cplx> hat_moments(double s0, double s1) const;

    /// int_0^t k(t - tau) g(tau) dtau
    cplx convolve(const Forcing& g, double t, const ConvolutionSpec& spec = {}) const;

    /// Convolution with the piecewise-linear interpolant of uniform samples
    /// g_0..g_n (spacing h), returned at every node.
    std::vector<cplx> convolve_grid(std::span<const cplx> g, double h) const;

    /// Same interpolant, value at the last node only.
    cplx convolve_last(std::span<const cplx> g, double h) const;

    double rho() const { return rho_; }
    double beta() const { return beta_; }
    cplx a() const { return a_; }

private:
    using Fn = std::variant<MittagLeffler, Prabhakar2>;

    cplx eval(const Fn& f, double s) const;
    template <class F>
    void for_nodes(double s0, double s1, F f) const;
    int pieces(double s0, double s1) const;

    double rho_, beta_;
    cplx a_;
    Fn f0_, f1_, f2_;
    cplx expo_rate_ = 0.0;
    bool expo_ = false;
};

} // namespace fractel
