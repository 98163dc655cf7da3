#pragma once

#include <stdexcept>
#include <string>

namespace mfcev {

/// Argument outside the mathematical domain of a function (e.g. log_gamma(0)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series, continued fraction or quadrature failed to reach its tolerance,
/// or a result is not representable (e.g. a zero premium annuity).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which model or contract constraint a ParameterError refers to.
enum class Constraint {
    kRate,
    kSigma0,
    kAlpha,
    kBeta,
    kHurst,
    kS0,
    kMaturity,
    kRecovery,
    kNotional,
    kPaymentFrequency,
    kMcPaths,
    kMcSteps,
    kMcHorizon,
    kMcBudget,
};

const char* constraint_name(Constraint c);

class ParameterError : public std::invalid_argument {
public:
    ParameterError(Constraint which, const std::string& what)
        : std::invalid_argument(what), which_(which) {}

    Constraint which() const { return which_; }

private:
    Constraint which_;
};

}  // namespace mfcev
