#pragma once

#include <cstdint>
#include <vector>

#include "fractel/laplace.hpp"
#include "fractel/spectral_solver.hpp"

namespace fractel {

/// A seeded test problem on the Dirichlet Laplacian of (0, L). Coefficients follow
/// closed rules in the mode number, so the same problem can be built at any K:
///   phi1_k = a1 (-1)^{k+1} / k^2,  phi0_k = a0 cos(k) / k,
///   f_k(t) = (fa + fb exp(-fc t)) / k^2.
struct Fixture {
    int id = 0;
    double rho = 0.5;
    double alpha = 1.0;
    double T = 1.0;
    double length = 3.14159265358979323846;
    int K = 8;
    /// mode with lambda_k = alpha^2, 0 when there is none
    int critical_mode = 0;
    double a1 = 0.0, a0 = 0.0;
    double fa = 0.0, fb = 0.0, fc = 1.0;

    bool forced() const { return fa != 0.0 || fb != 0.0; }
    cplx phi1(int k) const;
    cplx phi0(int k) const;
    ExpForcing forcing(int k) const;
    double eigenvalue(int k) const;

    TelegraphProblem problem(int modes) const;
    TelegraphProblem problem() const { return problem(K); }
    /// same data with f = 0
    Fixture unforced() const;
};

/// count problems drawn with mt19937_64(seed). rho cycles through
/// {0.25, 0.5, 0.75, 0.9}; every fifth problem has a critical mode.
std::vector<Fixture> fixture_family(std::uint64_t seed, int count = 20);

/// K = 32 Laplacian on (0, pi), rho = 1/2, alpha = 1 (mode 1 critical),
/// phi1_k = k^-3, phi0_k = (-1)^k / k^2, f = 0.
TelegraphProblem laplacian_fixture(int K = 32);

} // namespace fractel
