#include "fractel/fixtures.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace fractel {

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

cplx Fixture::phi1(int k) const { return a1 * (k % 2 ? 1.0 : -1.0) / (double(k) * k); }

cplx Fixture::phi0(int k) const { return a0 * std::cos(double(k)) / k; }

ExpForcing Fixture::forcing(int k) const
{
    double w = 1.0 / (double(k) * k);
    return {fa * w, fb * w, fc};
}

double Fixture::eigenvalue(int k) const { return std::pow(k * pi / length, 2); }

TelegraphProblem Fixture::problem(int modes) const
{
    TelegraphProblem p;
    p.rho = rho;
    p.alpha = alpha;
    p.T = T;
    p.op = SpectralOperator::laplacian_1d(length, modes);
    for (int k = 1; k <= modes; ++k) {
        p.phi0.push_back(phi0(k));
        p.phi1.push_back(phi1(k));
    }
    if (forced()) {
        for (int k = 1; k <= modes; ++k) {
            ExpForcing e = forcing(k);
            p.f.push_back(Forcing::callable([e](double t) { return e(t); }, true));
        }
    }
    return p;
}

Fixture Fixture::unforced() const
{
    Fixture f = *this;
    f.fa = f.fb = 0.0;
    return f;
}

std::vector<Fixture> fixture_family(std::uint64_t seed, int count)
{
    constexpr std::array rhos{0.25, 0.5, 0.75, 0.9};
    constexpr std::array alphas{0.5, 1.0, 2.0};
    constexpr std::array Ks{8, 16, 32};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto pick = [&](int n) { return std::min(static_cast<int>(unit(rng) * n), n - 1); };

    std::vector<Fixture> out;
    for (int i = 0; i < count; ++i) {
        Fixture f;
        f.id = i;
        f.rho = rhos[i % 4];
        f.alpha = alphas[pick(3)];
        f.K = Ks[pick(3)];
        if (i % 5 == 0) {
            f.critical_mode = 1 + pick(3);
            f.length = f.critical_mode * pi / f.alpha;
        } else {
            // keep every eigenvalue at least 5% away from alpha^2
            do {
                f.length = 2.0 + 2.0 * unit(rng);
            } while ([&] {
                for (int k = 1; k <= 2 * f.K; ++k)
                    if (std::abs(f.eigenvalue(k) / (f.alpha * f.alpha) - 1.0) < 0.05)
                        return true;
                return false;
            }());
        }
        f.a1 = 0.5 + unit(rng);
        f.a0 = 2.0 * unit(rng) - 1.0;
        if (i % 3 != 1) {
            f.fa = 2.0 * unit(rng) - 1.0;
            f.fb = 2.0 * unit(rng) - 1.0;
            f.fc = 0.5 + 2.5 * unit(rng);
        }
        out.push_back(f);
    }
    return out;
}

TelegraphProblem laplacian_fixture(int K)
{
    TelegraphProblem p;
    p.rho = 0.5;
    p.alpha = 1.0;
    p.T = 1.0;
    p.op = SpectralOperator::laplacian_1d(pi, K);
    for (int k = 1; k <= K; ++k) {
        p.phi1.push_back(std::pow(k, -3.0));
        p.phi0.push_back((k % 2 ? -1.0 : 1.0) / (double(k) * k));
    }
    return p;
}

} // namespace fractel
