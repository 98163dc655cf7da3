#pragma once

namespace mfcev::specfun {

// Series and continued-fraction controls shared by every routine below.
inline constexpr int kMaxTerms = 500;
inline constexpr double kStagnationTol = 1e-15;

struct SpecFunResult {
    double value = 0.0;
    bool converged = false;
    int terms_used = 0;
};

/// ln Gamma(s) for s > 0. Throws DomainError otherwise.
double log_gamma(double s);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
/// Power series for x < s + 1, continued fraction for the complement otherwise.
SpecFunResult reg_gamma_lower(double s, double x);

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s).
SpecFunResult reg_gamma_upper(double s, double x);

/// Kummer's confluent hypergeometric function 1F1(a; b; z) for b > 0, z >= 0.
///
/// Ascending series up to z = 50, leading asymptotic expansion beyond that.
/// When a is a nonpositive integer the series terminates and is always used.
SpecFunResult kummer_1f1(double a, double b, double z);

/// Whittaker M_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} 1F1(mu - kappa + 1/2; 1 + 2 mu; z), z > 0.
SpecFunResult whittaker_m(double kappa, double mu, double z);

}  // namespace mfcev::specfun
