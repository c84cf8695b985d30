#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fractel/fixtures.hpp"

namespace fractel {

/// Statements of the underlying theory that the suite must cover.
enum class Anchor {
    ml_series_definition,
    prabhakar_reduction,
    ml_asymptotic_law,
    ml_decay_bound,
    large_eigenvalue_bound,
    caputo_eigenfunction,
    scalar_solution,
    integro_auxiliary,
    relaxation_auxiliary,
    semigroup_estimates,
    resolvent_estimates,
    convolution_estimates,
    double_integral_estimate,
    stability_estimate,
    uniqueness,
    modal_expansion,
    power_scale,
    count_
};

std::string_view anchor_statement(Anchor a);

struct CheckInfo {
    std::string_view id;
    Anchor anchor;
};

inline constexpr std::array check_table{
    CheckInfo{"ml_classical_reductions", Anchor::ml_series_definition},
    CheckInfo{"ml_recurrence", Anchor::ml_series_definition},
    CheckInfo{"prabhakar_reduction", Anchor::prabhakar_reduction},
    CheckInfo{"ml_asymptotic_law", Anchor::ml_asymptotic_law},
    CheckInfo{"ml_decay_bound", Anchor::ml_decay_bound},
    CheckInfo{"large_eigenvalue_kernel_bound", Anchor::large_eigenvalue_bound},
    CheckInfo{"caputo_eigenfunction", Anchor::caputo_eigenfunction},
    CheckInfo{"scalar_laplace_consistency", Anchor::scalar_solution},
    CheckInfo{"scalar_equation_residual", Anchor::scalar_solution},
    CheckInfo{"scalar_initial_conditions", Anchor::scalar_solution},
    CheckInfo{"scalar_case_continuity", Anchor::scalar_solution},
    CheckInfo{"integro_plug_back", Anchor::integro_auxiliary},
    CheckInfo{"relaxation_plug_back", Anchor::relaxation_auxiliary},
    CheckInfo{"semigroup_bounds", Anchor::semigroup_estimates},
    CheckInfo{"resolvent_bounds", Anchor::resolvent_estimates},
    CheckInfo{"forced_convolution_bounds", Anchor::convolution_estimates},
    CheckInfo{"double_integral_bound", Anchor::double_integral_estimate},
    CheckInfo{"stability_ratio", Anchor::stability_estimate},
    CheckInfo{"zero_data_uniqueness", Anchor::uniqueness},
    CheckInfo{"spectral_assembly", Anchor::modal_expansion},
    CheckInfo{"power_scale_embedding", Anchor::power_scale},
};

constexpr bool every_anchor_claimed()
{
    for (int a = 0; a < static_cast<int>(Anchor::count_); ++a) {
        bool found = false;
        for (const auto& c : check_table)
            found = found || static_cast<int>(c.anchor) == a;
        if (!found)
            return false;
    }
    return true;
}

static_assert(every_anchor_claimed(), "an anchor has no check");

struct SuiteConfig {
    std::uint64_t seed = 20240611;
    int fixtures = 20;
    /// caps the fixture mode count; 0 keeps each fixture's K
    int max_modes = 0;
    /// grid sizes n (h = T / n) for residual sweeps
    std::vector<int> residual_levels{100, 300, 1000};
    /// multiply every Mittag-Leffler value used by the estimate checks by (1 + |z|)
    bool fault_inject = false;
    int threads = 1;
    /// run only these check ids; empty runs all
    std::vector<std::string> only;
};

struct CheckReport {
    std::string check_id;
    Anchor anchor = Anchor::count_;
    bool pass = false;
    std::optional<double> certified_constant;
    nlohmann::json details = nlohmann::json::object();

    nlohmann::json to_json() const;
};

std::vector<CheckReport> run_suite(const SuiteConfig& cfg = {});

/// One JSON object per line, in check_table order.
std::string to_json_lines(const std::vector<CheckReport>& reports);
std::string summary_table(const std::vector<CheckReport>& reports);

struct SweepSpec {
    double rho = 0.5;
    double mu = 1.0;
    double alpha = 1.0;
    double T = 1.0;
    /// eigenvalues for operator sweeps
    std::vector<double> eigenvalues;
    double r_min = 1e-3;
    double r_max = 1e3;
    int points = 121;
    /// ray angles; empty uses {beta, (beta + pi) / 2, pi}
    std::vector<double> angles;
    long budget = 1'000'000;
    bool fault_inject = false;
};

struct Certified {
    double value = 0.0;
    nlohmann::json argmax;
    /// log-log slope of the ratio over the last decade of the sweep
    double tail_slope = 0.0;
};

/// Supremum of a check's inequality ratio over a sweep. Supported ids:
/// ml_decay_bound, large_eigenvalue_kernel_bound, semigroup_bounds, double_integral_bound.
Certified certify_constant(std::string_view check_id, const SweepSpec& sweep);

} // namespace fractel
