#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "fractel/verify.hpp"

using namespace fractel;

namespace {

constexpr double pi = std::numbers::pi;

SuiteConfig quick(std::vector<std::string> only)
{
    SuiteConfig cfg;
    cfg.max_modes = 8;
    cfg.only = std::move(only);
    return cfg;
}

const std::vector<std::string> cheap{"ml_classical_reductions", "ml_recurrence",  "prabhakar_reduction",
                                     "ml_asymptotic_law",       "ml_decay_bound", "large_eigenvalue_kernel_bound",
                                     "zero_data_uniqueness",    "power_scale_embedding", "semigroup_bounds",
                                     "resolvent_bounds",        "double_integral_bound"};

} // namespace

TEST_CASE("check table covers every anchor once per id")
{
    std::set<std::string_view> ids;
    for (const auto& c : check_table) {
        CHECK(ids.insert(c.id).second);
        CHECK(!anchor_statement(c.anchor).empty());
    }
    CHECK(ids.size() == check_table.size());
    CHECK(every_anchor_claimed());
}

TEST_CASE("cheap checks pass on the default fixtures")
{
    auto reports = run_suite(quick(cheap));
    REQUIRE(reports.size() == cheap.size());
    for (const auto& r : reports) {
        CAPTURE(r.check_id);
        CHECK(r.pass);
    }
}

TEST_CASE("reports are ordered, reproducible and serialise as JSON lines")
{
    auto cfg = quick({"power_scale_embedding", "ml_decay_bound", "ml_recurrence"});
    auto a = run_suite(cfg);
    cfg.threads = 3;
    auto b = run_suite(cfg);
    CHECK(to_json_lines(a) == to_json_lines(b));
    REQUIRE(a.size() == 3);
    // check_table order, not request order
    CHECK(a[0].check_id == "ml_recurrence");
    CHECK(a[1].check_id == "ml_decay_bound");
    CHECK(a[2].check_id == "power_scale_embedding");

    std::istringstream in(to_json_lines(a));
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j.contains("anchor"));
        CHECK(j["status"] == "pass");
        CHECK(j["scope"].get<std::string>().find("not a proof") != std::string::npos);
        ++n;
    }
    CHECK(n == 3);
    CHECK(summary_table(a).find("3/3 checks passed") != std::string::npos);
}

TEST_CASE("fault injection is caught")
{
    auto cfg = quick({"ml_decay_bound", "semigroup_bounds", "ml_classical_reductions"});
    cfg.fault_inject = true;
    auto r = run_suite(cfg);
    CHECK(r[0].check_id == "ml_classical_reductions");
    CHECK(r[0].pass);
    CHECK_FALSE(r[1].pass);
    CHECK_FALSE(r[2].pass);
}

TEST_CASE("zero data gives an exactly zero field")
{
    auto r = run_suite(quick({"zero_data_uniqueness"}));
    CHECK(r[0].pass);
    CHECK(r[0].details["max_abs"].get<double>() == 0.0);
}

TEST_CASE("unknown ids are configuration errors")
{
    CHECK_THROWS_AS(run_suite(quick({"no_such_check"})), InvalidParameter);
    CHECK_THROWS_AS(certify_constant("stability_ratio", SweepSpec{}), InvalidParameter);
}

TEST_CASE("certify_constant: decay bound on the negative real axis")
{
    SweepSpec sw;
    sw.rho = 0.5;
    sw.mu = 1.0;
    sw.angles = {pi};
    auto c = certify_constant("ml_decay_bound", sw);
    // (1 + x) exp(x^2) erfc(x) peaks at x = 0 (oracle script)
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.argmax["r"].get<double>() == 0.0);
    CHECK(c.tail_slope < 0.05);
    CHECK(ml_bound_check(0.5, 1.0, -1.0) == doctest::Approx(0.85516715231161400882).epsilon(1e-12));

    sw.fault_inject = true;
    CHECK(certify_constant("ml_decay_bound", sw).tail_slope > 0.5);
}

TEST_CASE("certify_constant: semigroup constant is attained at t = 0")
{
    SweepSpec sw;
    sw.rho = 0.75;
    sw.mu = 1.0;
    sw.eigenvalues = {0.5, 3.0, 40.0};
    auto c = certify_constant("semigroup_bounds", sw);
    CHECK(c.value >= 1.0 - 1e-12);
    CHECK(c.value <= 1.0 + 1e-12);
}

TEST_CASE("certify_constant: the double-integral constant is a literal bound")
{
    for (double rho : {0.25, 0.5, 0.9})
        for (double alpha : {0.5, 2.0}) {
            SweepSpec sw;
            sw.rho = rho;
            sw.alpha = alpha;
            auto c = certify_constant("double_integral_bound", sw);
            CAPTURE(rho);
            CAPTURE(alpha);
            CHECK(c.value > 0.0);
            CHECK(c.value <= 1.0);
        }
}

TEST_CASE("certify_constant: large-eigenvalue estimate and budget")
{
    SweepSpec sw;
    sw.rho = 0.5;
    sw.alpha = 1.0;
    sw.points = 49;
    auto c = certify_constant("large_eigenvalue_kernel_bound", sw);
    CHECK(std::isfinite(c.value));
    CHECK(c.value <= 1.0 + 1e-9);

    sw.budget = 10;
    CHECK_THROWS_AS(certify_constant("large_eigenvalue_kernel_bound", sw), SweepBudgetExceeded);
    CHECK_THROWS_AS(certify_constant("ml_decay_bound", sw), SweepBudgetExceeded);

    SweepSpec bad;
    bad.angles = {0.1};
    CHECK_THROWS_AS(certify_constant("ml_decay_bound", bad), SectorViolation);
}
