#include <cmath>
#include <random>
#include <vector>

#include <catch_amalgamated.hpp>

#include "mfcev/cds.hpp"
#include "mfcev/errors.hpp"
#include "oracles.hpp"
#include "table1.hpp"

using namespace mfcev;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ModelParams base_params(double alpha, double beta, double hurst) {
    return {.rate = 0.05, .sigma0 = 0.2, .alpha = alpha, .beta = beta, .hurst = hurst, .s0 = 50.0};
}

CdsContract base_contract(double maturity) { return {.maturity = maturity, .recovery = 0.5}; }

}  // namespace

TEST_CASE("premium schedule", "[cds][schedule]") {
    const auto semi = premium_schedule(base_contract(2.0));
    REQUIRE(semi.size() == 4);
    for (std::size_t i = 0; i < semi.size(); ++i) {
        CHECK(semi[i].time == 0.5 * static_cast<double>(i + 1));
        CHECK(semi[i].accrual == 0.5);
    }

    const auto stub = premium_schedule(base_contract(1.25));
    REQUIRE(stub.size() == 3);
    CHECK(stub.back().time == 1.25);
    CHECK_THAT(stub.back().accrual, WithinAbs(0.25, 1e-15));

    CdsContract quarterly = base_contract(0.3);
    quarterly.payments_per_year = 10;
    CHECK(premium_schedule(quarterly).size() == 3);

    CHECK_THROWS_AS(premium_schedule(base_contract(0.0)), ParameterError);
    CdsContract bad = base_contract(1.0);
    bad.payments_per_year = 0;
    CHECK_THROWS_AS(premium_schedule(bad), ParameterError);
    bad = base_contract(1.0);
    bad.recovery = 1.5;
    CHECK_THROWS_AS(validate(bad), ParameterError);
}

TEST_CASE("protection leg examples", "[cds][protection]") {
    CdsContract full_recovery = base_contract(5.0);
    full_recovery.recovery = 1.0;
    CHECK(protection_leg(full_recovery, base_params(-2.0, 1.0, 0.9)) == 0.0);

    CHECK(protection_leg(base_contract(1e-3), base_params(-2.0, 1.0, 0.9)) < 1e-100);

    const auto forms = protection_leg_forms(base_contract(10.0), base_params(0.0, 0.0, 0.8));
    CHECK_THAT(forms.density_form, WithinRel(forms.parts_form, 1e-8));
    CHECK_THAT(cds_spread(base_contract(10.0), base_params(0.0, 0.0, 0.8)), WithinAbs(22.0907, 5e-5));

    CdsContract doubled = base_contract(10.0);
    doubled.notional = 2.0;
    CHECK_THAT(protection_leg(doubled, base_params(0.0, 0.0, 0.8)), WithinRel(2.0 * forms.parts_form, 1e-14));
}

TEST_CASE("protection leg density and parts forms agree on every table cell", "[cds][protection][property]") {
    for (const auto& cell : table1::kCells) {
        const auto forms = protection_leg_forms(base_contract(cell.maturity), base_params(cell.alpha, cell.beta, cell.hurst));
        CHECK_THAT(forms.density_form, WithinRel(forms.parts_form, 1e-8));
    }
}

TEST_CASE("premium annuity examples", "[cds][annuity]") {
    // sigma0 -> 0 makes default impossible: the annuity is a plain discounted sum.
    ModelParams riskless = base_params(0.0, 0.0, 0.8);
    riskless.sigma0 = 1e-4;
    double expected = 0.0;
    for (int i = 1; i <= 10; ++i) expected += 0.5 * std::exp(-0.05 * 0.5 * i);
    CHECK_THAT(premium_annuity(base_contract(5.0), riskless), WithinRel(expected, 1e-14));

    riskless.rate = 0.0;
    CHECK(premium_annuity(base_contract(1.0), riskless) == 1.0);

    for (const auto& cell : table1::kCells) {
        const double a = premium_annuity(base_contract(cell.maturity), base_params(cell.alpha, cell.beta, cell.hurst));
        CHECK(a > 0.0);
        CHECK(a <= cell.maturity);
    }
}

TEST_CASE("cds spread examples from the reference table", "[cds][spread]") {
    CHECK_THAT(cds_spread(base_contract(1.0), base_params(-2.0, 0.0, 0.8)), WithinAbs(14.6761, 5e-5));
    CHECK_THAT(cds_spread(base_contract(2.0), base_params(-2.0, 0.5, 0.8)), WithinAbs(97.5923, 5e-5));
    CHECK_THAT(cds_spread(base_contract(5.0), base_params(0.0, 1.0, 0.9)), WithinAbs(240.6370, 5e-5));
}

TEST_CASE("cds spread reports certain default before the first payment", "[cds][spread]") {
    ModelParams p = base_params(0.0, 0.0, 0.8);
    p.sigma0 = 1e160;
    CHECK_THROWS_AS(cds_spread(base_contract(1.0), p), NumericalError);
}

TEST_CASE("spread table", "[cds][table]") {
    const std::vector<std::pair<double, double>> pairs = {{0.0, 0.8}, {0.5, 0.8}, {0.5, 0.9}, {1.0, 0.8}, {1.0, 0.9}};
    const std::vector<double> alphas = {0.0, -2.0};
    const std::vector<double> maturities = {1.0, 2.0, 5.0, 10.0};
    const auto cells = spread_table(base_params(0.0, 0.0, 0.8), base_contract(1.0), alphas, pairs, maturities);
    REQUIRE(cells.size() == 40);
    std::size_t i = 0;
    for (const auto& [beta, hurst] : pairs)
        for (double m : maturities)
            for (double a : alphas) {
                const SpreadCell& c = cells[i++];
                CHECK(c.ok());
                CHECK(c.beta == beta);
                CHECK(c.hurst == hurst);
                CHECK(c.maturity == m);
                CHECK(c.alpha == a);
                CHECK(c.spread_bps >= 0.0);
            }

    CHECK(spread_table(base_params(0.0, 0.0, 0.8), base_contract(1.0), alphas, pairs, {}).empty());

    const auto single = spread_table(base_params(0.0, 0.0, 0.8), base_contract(1.0), {-2.0}, {{0.5, 0.9}}, {2.0});
    REQUIRE(single.size() == 1);
    CHECK(single[0].spread_bps == cds_spread(base_contract(2.0), base_params(-2.0, 0.5, 0.9)));

    const auto mixed = spread_table(base_params(0.0, 0.0, 0.8), base_contract(1.0), {0.0, 2.0}, {{0.5, 0.8}}, {1.0});
    REQUIRE(mixed.size() == 2);
    CHECK(mixed[0].ok());
    CHECK_FALSE(mixed[1].ok());
    CHECK_THAT(mixed[1].error, Catch::Matchers::ContainsSubstring("alpha"));
}

TEST_CASE("default curve", "[cds][curve]") {
    for (double alpha : {-2.0, 0.0}) {
        const auto classical = default_curve(base_params(alpha, 0.0, 0.8), 10.0, 101);
        const auto mixed = default_curve(base_params(alpha, 0.5, 0.8), 10.0, 101);
        REQUIRE(classical.size() == 101);
        CHECK(classical.front().t == 0.0);
        CHECK(classical.front().q == 0.0);
        CHECK(classical.back().t == 10.0);
        for (std::size_t i = 1; i < classical.size(); ++i) {
            CHECK(classical[i].q >= classical[i - 1].q);
            CHECK(mixed[i].q >= mixed[i - 1].q);
            CHECK(classical[i].q < mixed[i].q);
        }
    }
    CHECK(default_curve(base_params(0.0, 0.0, 0.8), 1.0, 2).size() == 2);
    CHECK_THROWS_AS(default_curve(base_params(0.0, 0.0, 0.8), 1.0, 1), DomainError);
    CHECK_THROWS_AS(default_curve(base_params(0.0, 0.0, 0.8), 0.0, 5), DomainError);
}

TEST_CASE("spread is increasing in beta", "[cds][spread][property]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> alpha(-2.0, 1.0);
    std::uniform_real_distribution<double> hurst(0.76, 0.99);
    std::uniform_int_distribution<int> maturity(1, 10);
    for (int i = 0; i < 25; ++i) {
        const double a = alpha(rng);
        const double h = hurst(rng);
        const CdsContract c = base_contract(maturity(rng));
        double prev = -1.0;
        for (double beta : {0.0, 0.5, 1.0}) {
            const double s = cds_spread(c, base_params(a, beta, h));
            CHECK(s > prev);
            prev = s;
        }
    }
}

TEST_CASE("spread vanishes with volatility", "[cds][spread][property]") {
    double prev = 1e9;
    for (double sigma0 : {0.2, 0.1, 0.05, 0.02, 0.01}) {
        ModelParams p = base_params(-2.0, 0.5, 0.8);
        p.sigma0 = sigma0;
        const double s = cds_spread(base_contract(5.0), p);
        CHECK(s < prev);
        prev = s;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("beta = 0 spreads match an independent classical CEV pricer", "[cds][spread][property]") {
    for (double alpha : {-3.0, -2.0, -1.0, 0.0, 0.5})
        for (double maturity : {1.0, 2.0, 5.0, 10.0}) {
            const double ref = oracle::cev_spread({0.05, 0.2, alpha, 50.0}, maturity, 0.5, 2);
            CHECK_THAT(cds_spread(base_contract(maturity), base_params(alpha, 0.0, 0.8)), WithinRel(ref, 1e-8));
        }
}

TEST_CASE("spread is not monotone in the Hurst exponent", "[cds][spread]") {
    // Reference pair at beta = 0.5, alpha = -2, T = 1: 33.0638 (H = 0.8) vs 32.9327 (H = 0.9).
    const double low_h = cds_spread(base_contract(1.0), base_params(-2.0, 0.5, 0.8));
    const double high_h = cds_spread(base_contract(1.0), base_params(-2.0, 0.5, 0.9));
    CHECK_THAT(low_h, WithinAbs(33.0638, 5e-5));
    CHECK_THAT(high_h, WithinAbs(32.9327, 5e-5));
    CHECK(high_h < low_h);
}

TEST_CASE("protection leg converges across a parameter grid", "[cds][protection][property]") {
    for (double alpha : {-2.0, -1.0, 0.0, 1.0})
        for (double beta : {0.0, 0.25, 0.5, 1.0, 1.5})
            for (double hurst : {0.8, 0.9})
                for (double maturity : {1.0, 2.0, 5.0, 10.0}) {
                    const auto forms = protection_leg_forms(base_contract(maturity), base_params(alpha, beta, hurst));
                    CHECK_THAT(forms.density_form, WithinRel(forms.parts_form, 1e-8));
                }
}
