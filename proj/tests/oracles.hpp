#pragma once

// Test-only reference implementations. None of these call into the library's
// special functions, quadrature wrapper or pricing code.

#include <cmath>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

// 1F1(a; b; z) by plain partial sums in long double, stopped when the partial
// sum stops changing.
inline long double kummer_brute(long double a, long double b, long double z) {
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 0; k < 10000; ++k) {
        term *= (a + k) / (b + k) * z / (k + 1);
        const long double next = sum + term;
        if (next == sum) break;
        sum = next;
    }
    return sum;
}

// Whittaker M through Kummer's transformation 1F1(a;b;z) = e^z 1F1(b-a;b;-z):
// M_{k,m}(z) = e^{z/2} z^{m+1/2} 1F1(m + k + 1/2; 1 + 2m; -z), an alternating series.
inline long double whittaker_kummer_transformed(long double kappa, long double mu, long double z) {
    return std::exp(z / 2) * std::pow(z, mu + 0.5L) * kummer_brute(mu + kappa + 0.5L, 1 + 2 * mu, -z);
}

struct CevInputs {
    double rate, sigma0, alpha, s0;
};

// Classical CEV absorption probability in Cox's parametrization:
// P(S_T = 0) = G(1/(2-a), kappa S0^{2-a} e^{(2-a) r T}), kappa = 2r / (delta^2 (2-a) (e^{(2-a) r T} - 1)).
inline double cev_absorption(const CevInputs& p, double t) {
    if (t <= 0.0) return 0.0;
    const double m = 2.0 - p.alpha;
    const double delta_sq = p.sigma0 * p.sigma0 * std::pow(p.s0, m);
    const double growth = std::exp(m * p.rate * t);
    const double kappa = 2.0 * p.rate / (delta_sq * m * (growth - 1.0));
    return boost::math::gamma_q(1.0 / m, kappa * std::pow(p.s0, m) * growth);
}

// Classical CEV spread (bps), protection leg by parts with tanh-sinh quadrature.
inline double cev_spread(const CevInputs& p, double maturity, double recovery, int per_year) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double tail = integrator.integrate(
        [&](double t) { return std::exp(-p.rate * t) * cev_absorption(p, t); }, 0.0, maturity, 1e-13);
    const double leg = (1.0 - recovery) * (std::exp(-p.rate * maturity) * cev_absorption(p, maturity) + p.rate * tail);
    double annuity = 0.0;
    const int n = static_cast<int>(std::lround(maturity * per_year));
    for (int i = 1; i <= n; ++i) {
        const double ti = static_cast<double>(i) / per_year;
        annuity += std::exp(-p.rate * ti) * (1.0 - cev_absorption(p, ti)) / per_year;
    }
    return 1e4 * leg / annuity;
}

}  // namespace oracle
