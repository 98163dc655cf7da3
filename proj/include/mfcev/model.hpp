#pragma once

// Mixed-fractional CEV model: dS = r S dt + delta S^{alpha/2} dM, M = B + beta B^H,
// delta^2 = sigma0^2 S0^{2-alpha}. Default is the first passage of S through zero.

namespace mfcev {

struct ModelParams {
    double rate = 0.05;    // r, per year
    double sigma0 = 0.2;   // volatility scale, per sqrt(year)
    double alpha = 0.0;    // elasticity exponent, < 2
    double beta = 0.0;     // weight of the fractional component
    double hurst = 0.8;    // Hurst exponent in (3/4, 1)
    double s0 = 50.0;      // initial price
};

/// Returns params unchanged or throws ParameterError naming the first violated constraint.
ModelParams validate(const ModelParams& params);

/// Coefficients of the forward equation for x = S^{2-alpha}:
///   dP/dt = -d/dx[(A x + B(t)) P] + C(t) d^2/dx^2[x P].
class EffectiveCoefficients {
public:
    explicit EffectiveCoefficients(const ModelParams& params);

    const ModelParams& params() const { return params_; }

    double a_drift() const { return a_drift_; }
    double b_drift(double t) const;
    double c_diff(double t) const;

    /// B(t) / C(t) = (1 - alpha) / (2 - alpha).
    double theta() const { return theta_; }
    double xi() const { return theta_; }
    /// Shape 1 - xi = 1 / (2 - alpha) of the first-passage gamma law.
    double shape() const { return 1.0 / (2.0 - params_.alpha); }

    /// sigma^2 = delta^2 = sigma0^2 S0^{2-alpha}.
    double delta_sq() const { return delta_sq_; }
    double x0() const { return x0_; }

    /// v(t) = t + beta^2 t^{2H}.
    double variance_clock(double t) const;
    /// v'(t) / 2 = 1/2 + beta^2 H t^{2H-1}.
    double half_clock_rate(double t) const;

private:
    ModelParams params_;
    double a_drift_;
    double theta_;
    double delta_sq_;
    double x0_;
};

// Below this rate the closed form for phi switches to its r -> 0 limit.
inline constexpr double kZeroRateThreshold = 1e-12;

/// phi(t) = int_0^t C(s) e^{-(2-alpha) r s} ds, closed form with the Whittaker M term.
double phi_closed(double t, const ModelParams& params);

/// Same integral by adaptive quadrature; throws NumericalError if the tolerance is missed.
double phi_quadrature(double t, const ModelParams& params);

/// First-passage density of x through zero at time t > 0, evaluated in log space.
double fpt_density(double t, const ModelParams& params);

/// Risk-neutral default probability Q(tau <= t) = Gamma(1-xi, x0/phi(t)) / Gamma(1-xi).
double default_probability(double t, const ModelParams& params);

}  // namespace mfcev
