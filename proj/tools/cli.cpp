#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mfcev/cds.hpp"
#include "mfcev/errors.hpp"
#include "mfcev/model.hpp"
#include "mfcev/monte_carlo.hpp"
#include "scenario.hpp"

namespace mfcev::cli {

namespace {

struct State {
    ModelParams model;
    CdsContract contract;
    int precision = 0;  // 0: command defaults
    std::string scenario;

    // table1
    std::vector<double> alphas{0.0, -2.0};
    std::vector<double> betas{0.0, 0.5, 1.0};
    std::vector<double> hursts{0.8, 0.9};
    std::vector<double> maturities{1.0, 2.0, 5.0, 10.0};
    std::string output;

    // curve
    double tmax = 10.0;
    int points = 101;
    std::vector<std::string> series{"0", "0.5:0.8", "0.5:0.9", "1:0.8", "1:0.9"};

    // validate
    long paths = 0;
    long steps = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

const std::map<std::string, std::vector<std::string>> kRequired = {
    {"spread", {"alpha", "beta", "hurst", "sigma0", "rate", "recovery", "maturity"}},
    {"table1", {}},
    {"curve", {"alpha", "tmax", "points"}},
    {"validate", {"alpha", "beta", "hurst", "sigma0", "rate", "recovery", "maturity", "paths", "steps", "seed"}},
};

std::ostringstream make_stream() {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    return s;
}

std::string fixed(double v, int decimals) {
    auto s = make_stream();
    s << std::fixed << std::setprecision(decimals) << v;
    return s.str();
}

std::string significant(double v, int digits) {
    auto s = make_stream();
    s << std::setprecision(digits) << v;
    return s.str();
}

// Grid coordinates (alpha, beta, maturity, ...) echo back without loss.
std::string coord(double v) { return significant(v, 15); }

std::string bps(const State& st, double v) { return st.precision > 0 ? significant(v, st.precision) : fixed(v, 4); }
std::string prob(const State& st, double v) { return significant(v, st.precision > 0 ? st.precision : 6); }

void add_model_flags(CLI::App* sub, State& st, bool with_beta_hurst) {
    sub->add_option("--alpha", st.model.alpha, "Elasticity exponent, alpha < 2")->capture_default_str();
    if (with_beta_hurst) {
        sub->add_option("--beta", st.model.beta, "Weight of the fractional Brownian component, >= 0")
            ->capture_default_str();
        sub->add_option("--hurst", st.model.hurst, "Hurst exponent, 3/4 < H < 1")->capture_default_str();
    }
    sub->add_option("--sigma0", st.model.sigma0, "Volatility scale at S0, > 0")->capture_default_str();
    sub->add_option("--rate", st.model.rate, "Risk-free rate, >= 0")->capture_default_str();
    sub->add_option("--s0", st.model.s0, "Initial price, > 0")->capture_default_str();
}

void add_contract_flags(CLI::App* sub, State& st, bool with_maturity) {
    sub->add_option("--recovery", st.contract.recovery, "Recovery rate in [0, 1]")->capture_default_str();
    if (with_maturity) sub->add_option("--maturity", st.contract.maturity, "Maturity in years")->capture_default_str();
    sub->add_option("--freq", st.contract.payments_per_year, "Premium payments per year")->capture_default_str();
}

void add_precision_flag(CLI::App* sub, State& st) {
    sub->add_option("--precision", st.precision,
                    "Print every value with this many significant digits (default: 4 decimals for bps, "
                    "6 significant digits for probabilities)");
}

std::pair<double, double> parse_series(const std::string& spec) {
    const auto colon = spec.find(':');
    try {
        std::size_t used = 0;
        const std::string beta_txt = spec.substr(0, colon);
        const double beta = std::stod(beta_txt, &used);
        if (used != beta_txt.size()) throw std::invalid_argument(spec);
        double hurst = 0.8;
        if (colon != std::string::npos) {
            const std::string hurst_txt = spec.substr(colon + 1);
            hurst = std::stod(hurst_txt, &used);
            if (used != hurst_txt.size()) throw std::invalid_argument(spec);
        } else if (beta != 0.0) {
            throw std::invalid_argument(spec);
        }
        return {beta, hurst};
    } catch (const std::logic_error&) {
        throw DomainError("series must be `beta:hurst` (or just `0` for the classical CEV), got `" + spec + "`");
    }
}

std::string series_name(double beta, double hurst) {
    return beta == 0.0 ? "Q_beta0" : "Q_beta" + coord(beta) + "_H" + coord(hurst);
}

int cmd_spread(State& st, std::ostream& out) {
    const ModelParams params = validate(st.model);
    const CdsContract contract = validate(st.contract);
    out << bps(st, cds_spread(contract, params)) << '\n';
    return kExitOk;
}

int cmd_table1(State& st, std::ostream& out, std::ostream& err) {
    const ModelParams base = validate(st.model);
    CdsContract contract = st.contract;
    contract.maturity = 1.0;
    validate(contract);

    std::vector<std::pair<double, double>> pairs;
    for (double beta : st.betas) {
        if (beta == 0.0) {
            pairs.emplace_back(beta, st.hursts.empty() ? base.hurst : st.hursts.front());
            continue;
        }
        for (double hurst : st.hursts) pairs.emplace_back(beta, hurst);
    }
    // Surface invalid grid values as parameter errors, not as failed cells.
    for (const auto& [beta, hurst] : pairs)
        for (double alpha : st.alphas) {
            ModelParams p = base;
            p.alpha = alpha;
            p.beta = beta;
            p.hurst = hurst;
            validate(p);
        }
    for (double m : st.maturities) {
        contract.maturity = m;
        validate(contract);
    }

    const std::vector<SpreadCell> cells = spread_table(base, st.contract, st.alphas, pairs, st.maturities);
    bool failed = false;
    for (const SpreadCell& c : cells) {
        if (c.ok()) continue;
        failed = true;
        err << "error: cell beta=" << coord(c.beta) << " hurst=" << coord(c.hurst) << " alpha=" << coord(c.alpha)
            << " maturity=" << coord(c.maturity) << ": " << c.error << '\n';
    }
    if (failed) return kExitNumerical;

    auto csv = make_stream();
    csv << "beta,hurst,alpha,maturity,spread_bps\n";
    for (const SpreadCell& c : cells) {
        csv << coord(c.beta) << ',' << (c.beta == 0.0 ? std::string("-") : coord(c.hurst)) << ',' << coord(c.alpha)
            << ',' << coord(c.maturity) << ',' << bps(st, c.spread_bps) << '\n';
    }
    if (st.output.empty()) {
        out << csv.str();
    } else {
        std::ofstream file(st.output, std::ios::binary);
        if (!file) throw DomainError("cannot write " + st.output);
        file << csv.str();
    }
    return kExitOk;
}

int cmd_curve(State& st, std::ostream& out) {
    validate(st.model);
    std::vector<std::pair<double, double>> series;
    for (const std::string& s : st.series) series.push_back(parse_series(s));
    if (series.empty()) throw DomainError("curve: at least one --series is required");

    std::vector<std::vector<CurvePoint>> curves;
    for (const auto& [beta, hurst] : series) {
        ModelParams p = st.model;
        p.beta = beta;
        p.hurst = hurst;
        curves.push_back(default_curve(p, st.tmax, st.points));
    }

    auto csv = make_stream();
    csv << 't';
    for (const auto& [beta, hurst] : series) csv << ',' << series_name(beta, hurst);
    csv << '\n';
    for (std::size_t i = 0; i < curves.front().size(); ++i) {
        csv << prob(st, curves.front()[i].t);
        for (const auto& curve : curves) csv << ',' << prob(st, curve[i].q);
        csv << '\n';
    }
    out << csv.str();
    return kExitOk;
}

int cmd_validate(State& st, std::ostream& out) {
    const ModelParams params = validate(st.model);
    const CdsContract contract = validate(st.contract);
    mc::McConfig cfg;
    cfg.n_paths = st.paths;
    cfg.n_steps = st.steps;
    cfg.horizon = contract.maturity;
    cfg.seed = st.seed;
    cfg.threads = st.threads;
    mc::validate(cfg);

    const double q = default_probability(contract.maturity, params);
    const double spread = cds_spread(contract, params);
    const mc::DefaultTimes taus = mc::simulate_fpt(params, cfg);
    const mc::McResult mc_q = mc::estimate_default_probability(taus);

    double z = 0.0;
    if (mc_q.std_error > 0.0)
        z = (mc_q.estimate - q) / mc_q.std_error;
    else if (mc_q.estimate != q)
        z = std::numeric_limits<double>::infinity();

    auto report = make_stream();
    report << "horizon " << coord(contract.maturity) << '\n'
           << "paths " << cfg.n_paths << '\n'
           << "steps " << cfg.n_steps << '\n'
           << "seed " << cfg.seed << '\n'
           << "analytic_q " << prob(st, q) << '\n'
           << "mc_q " << prob(st, mc_q.estimate) << '\n'
           << "mc_q_std_error " << prob(st, mc_q.std_error) << '\n'
           << "mc_defaulted " << mc_q.n_defaulted << '\n'
           << "z_score " << significant(z, 4) << '\n'
           << "analytic_spread_bps " << bps(st, spread) << '\n';
    try {
        const mc::McResult mc_s = mc::estimate_cds_spread(taus, contract, params.rate);
        report << "mc_spread_bps " << bps(st, mc_s.estimate) << '\n'
               << "mc_spread_std_error_bps " << bps(st, mc_s.std_error) << '\n';
    } catch (const NumericalError& e) {
        report << "mc_spread_bps nan\n";
    }
    const bool pass = std::abs(z) <= 4.0;
    report << "result " << (pass ? "pass" : "fail") << '\n';
    out << report.str();
    return pass ? kExitOk : kExitValidationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    State st;
    CLI::App app{"Default probabilities and CDS spreads under the mixed-fractional CEV model", "mfcev"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Show help for every command");
    app.add_option("--scenario", st.scenario,
                   "Flat `key = value` file supplying flags for the command; explicit flags win");

    CLI::App* spread = app.add_subcommand("spread", "Equilibrium CDS spread (bps per year) for one contract");
    add_model_flags(spread, st, true);
    add_contract_flags(spread, st, true);
    add_precision_flag(spread, st);

    CLI::App* table = app.add_subcommand("table1", "CSV grid of spreads: beta,hurst,alpha,maturity,spread_bps");
    add_model_flags(table, st, false);
    add_contract_flags(table, st, false);
    table->add_option("--alphas", st.alphas, "Elasticities")->delimiter(',')->capture_default_str();
    table->add_option("--betas", st.betas, "Fractional weights (0 gives one classical row)")
        ->delimiter(',')
        ->capture_default_str();
    table->add_option("--hursts", st.hursts, "Hurst exponents")->delimiter(',')->capture_default_str();
    table->add_option("--maturities", st.maturities, "Maturities in years")->delimiter(',')->capture_default_str();
    table->add_option("--output", st.output, "Write the CSV here instead of stdout");
    add_precision_flag(table, st);

    CLI::App* curve = app.add_subcommand("curve", "CSV of default probability against time, one column per series");
    add_model_flags(curve, st, false);
    curve->add_option("--series", st.series, "beta:hurst pair, repeatable (`0` for the classical CEV)")
        ->delimiter(',')
        ->capture_default_str();
    curve->add_option("--tmax", st.tmax, "Last time point in years");
    curve->add_option("--points", st.points, "Number of grid points including t = 0 and tmax");
    add_precision_flag(curve, st);

    CLI::App* check = app.add_subcommand("validate", "Compare the analytic default probability with Monte Carlo");
    add_model_flags(check, st, true);
    add_contract_flags(check, st, true);
    check->add_option("--paths", st.paths, "Number of simulated paths");
    check->add_option("--steps", st.steps, "Time steps per path");
    check->add_option("--seed", st.seed, "Master seed");
    check->add_option("--threads", st.threads, "Worker threads (0: all cores)")->capture_default_str();
    add_precision_flag(check, st);

    auto parse = [&](std::vector<std::string> argv) {
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    };

    try {
        try {
            parse(args);
            if (!st.scenario.empty()) {
                CLI::App* sub = app.get_subcommands().front();
                std::vector<std::string> merged = args;
                for (const ScenarioEntry& e : load_scenario(st.scenario)) {
                    const CLI::Option* opt = sub->get_option_no_throw("--" + e.key);
                    if (opt == nullptr)
                        throw ScenarioError("scenario line " + std::to_string(e.line) + ": unknown key `" + e.key +
                                            "` for command " + sub->get_name());
                    if (opt->count() > 0) continue;
                    merged.push_back("--" + e.key);
                    merged.push_back(e.value);
                }
                app.clear();
                parse(merged);
            }
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitUsage;
        }

        CLI::App* sub = app.get_subcommands().front();
        for (const std::string& name : kRequired.at(sub->get_name())) {
            if (sub->get_option("--" + name)->count() == 0) {
                err << "error: " << sub->get_name() << " requires --" << name << '\n';
                return kExitUsage;
            }
        }

        const std::string& name = sub->get_name();
        if (name == "spread") return cmd_spread(st, out);
        if (name == "table1") return cmd_table1(st, out, err);
        if (name == "curve") return cmd_curve(st, out);
        return cmd_validate(st, out);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace mfcev::cli
