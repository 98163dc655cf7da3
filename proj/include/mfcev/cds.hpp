#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mfcev/model.hpp"

namespace mfcev {

struct CdsContract {
    double maturity = 1.0;     // years
    double recovery = 0.5;     // fraction of notional recovered at default
    double notional = 1.0;
    int payments_per_year = 2;
};

CdsContract validate(const CdsContract& contract);

struct PremiumDate {
    double time;     // payment date in years
    double accrual;  // year fraction paid at this date
};

/// Dates i / payments_per_year, i = 1..ceil(T * payments_per_year). A final date past
/// maturity is pulled back to T with a correspondingly short accrual.
std::vector<PremiumDate> premium_schedule(const CdsContract& contract);

struct ProtectionLegForms {
    double density_form;  // (1-R) int_0^T e^{-rt} g(t) dt
    double parts_form;    // (1-R) [e^{-rT} Q(T) + r int_0^T e^{-rt} Q(t) dt]
};

/// Both forms of the protection leg, each by adaptive quadrature.
ProtectionLegForms protection_leg_forms(const CdsContract& contract, const ModelParams& params);

/// Present value of the protection leg (parts form, per unit notional times notional).
/// Throws NumericalError if the two forms disagree by more than kLegFormTolerance.
double protection_leg(const CdsContract& contract, const ModelParams& params);

inline constexpr double kLegFormTolerance = 1e-8;

/// sum_i accrual_i e^{-r t_i} (1 - Q(t_i)). Dimensionless, independent of notional.
double premium_annuity(const CdsContract& contract, const ModelParams& params);

/// Running spread in basis points per year: 1e4 * V / (notional * annuity).
double cds_spread(const CdsContract& contract, const ModelParams& params);

struct SpreadCell {
    double alpha;
    double beta;
    double hurst;
    double maturity;
    double spread_bps;
    std::string error;  // empty when the cell priced successfully

    bool ok() const { return error.empty(); }
};

/// Prices every (beta, hurst) x maturity x alpha combination on top of base_params and
/// base_contract. Rows are ordered by (beta, hurst, maturity, alpha) in the order given.
/// A failing cell records its error message instead of aborting the batch.
std::vector<SpreadCell> spread_table(const ModelParams& base_params, const CdsContract& base_contract,
                                     const std::vector<double>& alphas,
                                     const std::vector<std::pair<double, double>>& betas_hursts,
                                     const std::vector<double>& maturities);

struct CurvePoint {
    double t;
    double q;
};

/// Default probability on a uniform grid over [0, t_max] including both endpoints.
std::vector<CurvePoint> default_curve(const ModelParams& params, double t_max, int n_points);

}  // namespace mfcev
