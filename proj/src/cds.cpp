#include "mfcev/cds.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "mfcev/errors.hpp"
#include "mfcev/quadrature.hpp"

namespace mfcev {

namespace {

constexpr quadrature::Tolerance kLegTolerance{1e-12, 1e-9};

double integrate_or_throw(auto&& f, double a, double b, const char* what) {
    const auto res = quadrature::integrate(f, a, b, kLegTolerance);
    if (!res.converged) {
        std::ostringstream msg;
        msg << what << ": quadrature on [" << a << ", " << b << "] reached error estimate "
            << res.error_estimate << " for value " << res.value;
        throw NumericalError(msg.str());
    }
    return res.value;
}

}  // namespace

CdsContract validate(const CdsContract& c) {
    if (!(c.maturity > 0.0) || !std::isfinite(c.maturity))
        throw ParameterError(Constraint::kMaturity, "invalid maturity: must satisfy T > 0, got " +
                                                        std::to_string(c.maturity));
    if (!(c.recovery >= 0.0 && c.recovery <= 1.0))
        throw ParameterError(Constraint::kRecovery, "invalid recovery: must satisfy 0 <= R <= 1, got " +
                                                        std::to_string(c.recovery));
    if (!(c.notional > 0.0) || !std::isfinite(c.notional))
        throw ParameterError(Constraint::kNotional, "invalid notional: must be positive, got " +
                                                        std::to_string(c.notional));
    if (c.payments_per_year < 1)
        throw ParameterError(Constraint::kPaymentFrequency,
                             "invalid payments_per_year: must be >= 1, got " +
                                 std::to_string(c.payments_per_year));
    return c;
}

std::vector<PremiumDate> premium_schedule(const CdsContract& contract) {
    const CdsContract c = validate(contract);
    const double per_year = c.payments_per_year;
    // Guard against T * f landing a hair above an integer, e.g. 0.3 * 10.
    const auto n = static_cast<long>(std::ceil(c.maturity * per_year - 1e-9));
    std::vector<PremiumDate> dates;
    dates.reserve(static_cast<std::size_t>(std::max(n, 1L)));
    double prev = 0.0;
    for (long i = 1; i <= std::max(n, 1L); ++i) {
        const double t = std::min(static_cast<double>(i) / per_year, c.maturity);
        dates.push_back({t, t - prev});
        prev = t;
    }
    return dates;
}

ProtectionLegForms protection_leg_forms(const CdsContract& contract, const ModelParams& params) {
    const CdsContract c = validate(contract);
    const ModelParams p = validate(params);
    const double lgd = (1.0 - c.recovery) * c.notional;
    const double r = p.rate;
    const double T = c.maturity;

    const double density_integral = integrate_or_throw(
        [&](double t) { return t > 0.0 ? std::exp(-r * t) * fpt_density(t, p) : 0.0; }, 0.0, T,
        "protection leg (density form)");

    double parts = std::exp(-r * T) * default_probability(T, p);
    if (r > 0.0) {
        parts += r * integrate_or_throw([&](double t) { return std::exp(-r * t) * default_probability(t, p); },
                                        0.0, T, "protection leg (parts form)");
    }
    return {lgd * density_integral, lgd * parts};
}

double protection_leg(const CdsContract& contract, const ModelParams& params) {
    const ProtectionLegForms forms = protection_leg_forms(contract, params);
    const double scale = std::max(std::abs(forms.density_form), std::abs(forms.parts_form));
    if (std::abs(forms.density_form - forms.parts_form) > kLegFormTolerance * scale + 1e-18) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "protection leg forms disagree: density " << forms.density_form << " vs parts "
            << forms.parts_form;
        throw NumericalError(msg.str());
    }
    return forms.parts_form;
}

double premium_annuity(const CdsContract& contract, const ModelParams& params) {
    const ModelParams p = validate(params);
    double annuity = 0.0;
    for (const PremiumDate& d : premium_schedule(contract))
        annuity += d.accrual * std::exp(-p.rate * d.time) * (1.0 - default_probability(d.time, p));
    return annuity;
}

double cds_spread(const CdsContract& contract, const ModelParams& params) {
    const CdsContract c = validate(contract);
    const double annuity = premium_annuity(c, params);
    if (!(annuity > std::numeric_limits<double>::min()))
        throw NumericalError("cds_spread: premium annuity underflows (certain default before first payment)");
    return 1e4 * protection_leg(c, params) / (c.notional * annuity);
}

std::vector<SpreadCell> spread_table(const ModelParams& base_params, const CdsContract& base_contract,
                                     const std::vector<double>& alphas,
                                     const std::vector<std::pair<double, double>>& betas_hursts,
                                     const std::vector<double>& maturities) {
    std::vector<SpreadCell> cells;
    cells.reserve(alphas.size() * betas_hursts.size() * maturities.size());
    for (const auto& [beta, hurst] : betas_hursts) {
        for (double maturity : maturities) {
            for (double alpha : alphas) {
                SpreadCell cell{alpha, beta, hurst, maturity, std::numeric_limits<double>::quiet_NaN(), {}};
                ModelParams p = base_params;
                p.alpha = alpha;
                p.beta = beta;
                p.hurst = hurst;
                CdsContract c = base_contract;
                c.maturity = maturity;
                try {
                    cell.spread_bps = cds_spread(c, p);
                } catch (const std::exception& e) {
                    cell.error = e.what();
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

std::vector<CurvePoint> default_curve(const ModelParams& params, double t_max, int n_points) {
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw DomainError("default_curve: t_max must be positive, got " + std::to_string(t_max));
    if (n_points < 2) throw DomainError("default_curve: need at least 2 points, got " + std::to_string(n_points));
    const ModelParams p = validate(params);
    std::vector<CurvePoint> curve;
    curve.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double t = i == n_points - 1 ? t_max : t_max * i / (n_points - 1);
        curve.push_back({t, default_probability(t, p)});
    }
    return curve;
}

}  // namespace mfcev
