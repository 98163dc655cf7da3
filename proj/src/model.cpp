#include "mfcev/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "mfcev/errors.hpp"
#include "mfcev/quadrature.hpp"
#include "mfcev/specfun.hpp"

namespace mfcev {

namespace {

[[noreturn]] void reject(Constraint c, const std::string& rule, double got) {
    std::ostringstream msg;
    msg << "invalid " << constraint_name(c) << ": must satisfy " << rule << ", got " << got;
    throw ParameterError(c, msg.str());
}

// Everything below works with phi / delta^2, so that x0 / phi = 1 / (sigma0^2 * phi_unit)
// and the S0 dependence cancels exactly.
double phi_unit(double t, const EffectiveCoefficients& coef) {
    if (t < 0.0 || std::isnan(t)) throw DomainError("phi: time must be nonnegative, got " + std::to_string(t));
    if (t == 0.0) return 0.0;
    const ModelParams& p = coef.params();
    const double m = 2.0 - p.alpha;
    const double beta_sq = p.beta * p.beta;
    const double t_2h = std::pow(t, 2.0 * p.hurst);

    if (p.rate < kZeroRateThreshold) return 0.5 * m * m * (t + beta_sq * t_2h);

    const double z = m * p.rate * t;
    double value = m / (2.0 * p.rate) * -std::expm1(-z);
    if (beta_sq > 0.0) {
        const double h = p.hurst;
        const auto wm = specfun::whittaker_m(h, h + 0.5, z);
        if (!wm.converged)
            throw NumericalError("phi: Whittaker M did not converge at z = " + std::to_string(z));
        // e^{-z} {2H+1 + e^{z/2} z^{-H} M_{H,H+1/2}(z)}
        const double brace = (2.0 * h + 1.0) * std::exp(-z) + std::exp(-0.5 * z - h * std::log(z)) * wm.value;
        value += beta_sq * m * m / (2.0 * (2.0 * h + 1.0)) * t_2h * brace;
    }
    return value;
}

}  // namespace

ModelParams validate(const ModelParams& p) {
    if (!(p.rate >= 0.0) || !std::isfinite(p.rate)) reject(Constraint::kRate, "r >= 0", p.rate);
    if (!(p.sigma0 > 0.0) || !std::isfinite(p.sigma0)) reject(Constraint::kSigma0, "sigma0 > 0", p.sigma0);
    if (!(p.alpha < 2.0) || !std::isfinite(p.alpha)) reject(Constraint::kAlpha, "alpha < 2", p.alpha);
    if (!(p.beta >= 0.0) || !std::isfinite(p.beta)) reject(Constraint::kBeta, "beta >= 0", p.beta);
    if (!(p.hurst > 0.75 && p.hurst < 1.0)) reject(Constraint::kHurst, "3/4 < H < 1", p.hurst);
    if (!(p.s0 > 0.0) || !std::isfinite(p.s0)) reject(Constraint::kS0, "S0 > 0", p.s0);
    return p;
}

EffectiveCoefficients::EffectiveCoefficients(const ModelParams& params)
    : params_(validate(params)),
      a_drift_((2.0 - params.alpha) * params.rate),
      theta_((1.0 - params.alpha) / (2.0 - params.alpha)),
      x0_(std::pow(params.s0, 2.0 - params.alpha)) {
    delta_sq_ = params.sigma0 * params.sigma0 * x0_;
}

double EffectiveCoefficients::half_clock_rate(double t) const {
    return 0.5 + params_.beta * params_.beta * params_.hurst * std::pow(t, 2.0 * params_.hurst - 1.0);
}

double EffectiveCoefficients::variance_clock(double t) const {
    return t + params_.beta * params_.beta * std::pow(t, 2.0 * params_.hurst);
}

double EffectiveCoefficients::b_drift(double t) const {
    const double m = 2.0 - params_.alpha;
    return delta_sq_ * (1.0 - params_.alpha) * m * half_clock_rate(t);
}

double EffectiveCoefficients::c_diff(double t) const {
    const double m = 2.0 - params_.alpha;
    return delta_sq_ * m * m * half_clock_rate(t);
}

double phi_closed(double t, const ModelParams& params) {
    const EffectiveCoefficients coef(params);
    return coef.delta_sq() * phi_unit(t, coef);
}

double phi_quadrature(double t, const ModelParams& params) {
    if (t < 0.0 || std::isnan(t)) throw DomainError("phi: time must be nonnegative, got " + std::to_string(t));
    const EffectiveCoefficients coef(params);
    const double k = coef.a_drift();
    // s = t w^2 turns the s^{2H-1} endpoint behaviour into a smooth w^{4H-1}.
    auto integrand = [&](double w) {
        const double s = t * w * w;
        return coef.c_diff(s) * std::exp(-k * s) * 2.0 * t * w;
    };
    const auto res = quadrature::integrate(integrand, 0.0, 1.0, {0.0, 1e-12});
    if (!res.converged) {
        std::ostringstream msg;
        msg << "phi quadrature did not converge on [0, " << t << "]: value " << res.value
            << ", error estimate " << res.error_estimate;
        throw NumericalError(msg.str());
    }
    return res.value;
}

double fpt_density(double t, const ModelParams& params) {
    if (!(t > 0.0)) throw DomainError("fpt_density: time must be positive, got " + std::to_string(t));
    const EffectiveCoefficients coef(params);
    const double m = 2.0 - params.alpha;
    const double s = coef.shape();
    const double phi = phi_unit(t, coef);
    const double u = 1.0 / (params.sigma0 * params.sigma0 * phi);
    // g = C(t) e^{-kt} / phi * u^s e^{-u} / Gamma(s); delta^2 cancels in C / phi.
    const double log_g = 2.0 * std::log(m) + std::log(coef.half_clock_rate(t)) - coef.a_drift() * t -
                         std::log(phi) + s * std::log(u) - u - specfun::log_gamma(s);
    if (log_g < -700.0) return 0.0;
    return std::exp(log_g);
}

double default_probability(double t, const ModelParams& params) {
    if (t < 0.0 || std::isnan(t))
        throw DomainError("default_probability: time must be nonnegative, got " + std::to_string(t));
    const EffectiveCoefficients coef(params);
    if (t == 0.0) return 0.0;
    const double u = 1.0 / (params.sigma0 * params.sigma0 * phi_unit(t, coef));
    const auto q = specfun::reg_gamma_upper(coef.shape(), u);
    if (!q.converged)
        throw NumericalError("default_probability: incomplete gamma did not converge at x = " +
                             std::to_string(u));
    return q.value;
}

}  // namespace mfcev
