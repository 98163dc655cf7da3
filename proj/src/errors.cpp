#include "mfcev/errors.hpp"

namespace mfcev {

const char* constraint_name(Constraint c) {
    switch (c) {
        case Constraint::kRate: return "rate";
        case Constraint::kSigma0: return "sigma0";
        case Constraint::kAlpha: return "alpha";
        case Constraint::kBeta: return "beta";
        case Constraint::kHurst: return "hurst";
        case Constraint::kS0: return "s0";
        case Constraint::kMaturity: return "maturity";
        case Constraint::kRecovery: return "recovery";
        case Constraint::kNotional: return "notional";
        case Constraint::kPaymentFrequency: return "payments_per_year";
        case Constraint::kMcPaths: return "n_paths";
        case Constraint::kMcSteps: return "n_steps";
        case Constraint::kMcHorizon: return "horizon";
        case Constraint::kMcBudget: return "work_budget";
    }
    return "unknown";
}

}  // namespace mfcev
