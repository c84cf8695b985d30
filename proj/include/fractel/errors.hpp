#pragma once

#include <stdexcept>
#include <string>

namespace fractel {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SectorViolation : std::domain_error {
    using std::domain_error::domain_error;
};
struct InvalidOrder : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct GridTooCoarse : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CaseMismatch : std::logic_error {
    using std::logic_error::logic_error;
};
struct EvaluationOutOfDomain : std::domain_error {
    using std::domain_error::domain_error;
};
struct WrongOperatorKind : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SweepBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fractel
