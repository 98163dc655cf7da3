#include "mfcev/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mfcev/errors.hpp"

namespace mfcev::specfun {

namespace {

// Lanczos approximation, g = 7, nine coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

constexpr double kTiny = 1e-300;
// exp() of anything below this is reported as an exact zero.
constexpr double kLogFloor = -745.0;
constexpr double kAsymptoticZ = 50.0;

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// log of x^s e^{-x} / Gamma(s), the common prefactor of P and Q.
double log_gamma_prefactor(double s, double x) { return s * std::log(x) - x - log_gamma(s); }

double scale(double mantissa, double log_prefactor) {
    if (log_prefactor < kLogFloor) return 0.0;
    return mantissa * std::exp(log_prefactor);
}

SpecFunResult lower_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    SpecFunResult out;
    for (int n = 1; n <= kMaxTerms; ++n) {
        term *= x / (s + n);
        sum += term;
        out.terms_used = n;
        if (std::abs(term) <= std::abs(sum) * kStagnationTol) {
            out.converged = true;
            break;
        }
    }
    out.value = scale(sum, log_gamma_prefactor(s, x));
    return out;
}

// Modified Lentz evaluation of the Legendre continued fraction for Gamma(s, x).
SpecFunResult upper_continued_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    SpecFunResult out;
    for (int i = 1; i <= kMaxTerms; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        out.terms_used = i;
        if (std::abs(del - 1.0) <= kStagnationTol) {
            out.converged = true;
            break;
        }
    }
    out.value = scale(h, log_gamma_prefactor(s, x));
    return out;
}

void check_gamma_args(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw DomainError("incomplete gamma: shape must be positive and finite, got " +
                          std::to_string(s));
    if (!(x >= 0.0) || std::isnan(x))
        throw DomainError("incomplete gamma: argument must be nonnegative, got " +
                          std::to_string(x));
}

// 1F1 represented as mantissa * exp(log_scale) so that callers can fold in
// their own exponential prefactors before leaving log space.
struct ScaledKummer {
    double mantissa = 0.0;
    double log_scale = 0.0;
    bool converged = false;
    int terms_used = 0;
};

ScaledKummer kummer_series(double a, double b, double z) {
    ScaledKummer out;
    double term = 1.0;
    double sum = 1.0;
    if (z == 0.0) {
        out.mantissa = 1.0;
        out.converged = true;
        return out;
    }
    for (int k = 0; k < kMaxTerms; ++k) {
        term *= (a + k) / (b + k) * z / (k + 1);
        sum += term;
        out.terms_used = k + 1;
        if (term == 0.0 || std::abs(term) <= std::abs(sum) * kStagnationTol) {
            out.converged = true;
            break;
        }
    }
    out.mantissa = sum;
    return out;
}

// 1F1(a;b;z) ~ Gamma(b)/Gamma(a) e^z z^{a-b} sum_k (b-a)_k (1-a)_k / (k! z^k), a, b > 0.
// The recessive (-z)^{-a} branch is smaller by e^{-z} and is dropped.
ScaledKummer kummer_asymptotic(double a, double b, double z) {
    ScaledKummer out;
    double term = 1.0;
    double sum = 1.0;
    double prev_abs = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kMaxTerms; ++k) {
        term *= (b - a + k) * (1.0 - a + k) / ((k + 1) * z);
        out.terms_used = k + 1;
        const double t_abs = std::abs(term);
        if (t_abs > prev_abs) {
            // Divergent tail: stop at the smallest term.
            out.converged = std::abs(term) <= 1e-12 * std::abs(sum);
            break;
        }
        sum += term;
        prev_abs = t_abs;
        if (term == 0.0 || t_abs <= std::abs(sum) * kStagnationTol) {
            out.converged = true;
            break;
        }
    }
    out.mantissa = sum;
    out.log_scale = z + (a - b) * std::log(z) + log_gamma(b) - log_gamma(a);
    return out;
}

ScaledKummer kummer_scaled(double a, double b, double z) {
    if (std::isnan(a) || std::isnan(b) || std::isnan(z))
        throw DomainError("kummer_1f1: NaN argument");
    if (is_nonpositive_integer(b))
        throw DomainError("kummer_1f1: b must not be a nonpositive integer, got " +
                          std::to_string(b));
    if (!(z >= 0.0)) throw DomainError("kummer_1f1: z must be nonnegative, got " + std::to_string(z));
    if (z > kAsymptoticZ && a > 0.0 && b > 0.0 && !is_nonpositive_integer(a))
        return kummer_asymptotic(a, b, z);
    return kummer_series(a, b, z);
}

SpecFunResult finish(double value, bool converged, int terms) {
    SpecFunResult out;
    out.value = value;
    out.converged = converged && std::isfinite(value);
    out.terms_used = terms;
    return out;
}

}  // namespace

double log_gamma(double s) {
    if (!(s > 0.0) || std::isinf(s))
        throw DomainError("log_gamma: argument must be positive and finite, got " +
                          std::to_string(s));
    if (s < 0.5) return log_gamma(s + 1.0) - std::log(s);
    const double x = s - 1.0;
    double acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (x + static_cast<double>(i));
    const double t = x + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(acc);
}

SpecFunResult reg_gamma_lower(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return {0.0, true, 0};
    if (x < s + 1.0) return lower_series(s, x);
    SpecFunResult upper = upper_continued_fraction(s, x);
    upper.value = 1.0 - upper.value;
    return upper;
}

SpecFunResult reg_gamma_upper(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return {1.0, true, 0};
    if (x < s + 1.0) {
        SpecFunResult lower = lower_series(s, x);
        lower.value = 1.0 - lower.value;
        return lower;
    }
    return upper_continued_fraction(s, x);
}

SpecFunResult kummer_1f1(double a, double b, double z) {
    const ScaledKummer k = kummer_scaled(a, b, z);
    const double value = k.log_scale == 0.0 ? k.mantissa : k.mantissa * std::exp(k.log_scale);
    return finish(value, k.converged, k.terms_used);
}

SpecFunResult whittaker_m(double kappa, double mu, double z) {
    if (!(z > 0.0)) throw DomainError("whittaker_m: z must be positive, got " + std::to_string(z));
    const ScaledKummer k = kummer_scaled(mu - kappa + 0.5, 1.0 + 2.0 * mu, z);
    const double log_prefactor = k.log_scale - 0.5 * z + (mu + 0.5) * std::log(z);
    return finish(scale(k.mantissa, log_prefactor), k.converged, k.terms_used);
}

}  // namespace mfcev::specfun
