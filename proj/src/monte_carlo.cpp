#include "mfcev/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "mfcev/errors.hpp"
#include "rng.hpp"

namespace mfcev::mc {

namespace {

// Per-step constants of the Euler scheme on the uniform grid.
struct StepTable {
    double x0;
    double linear;                  // 1 + A dt
    std::vector<double> shift;      // int B(t) dt over the step
    std::vector<double> vol_scale;  // sqrt(int 2 C(t) dt over the step / x)
    std::vector<double> times;      // right end of each step
};

StepTable make_steps(const ModelParams& params, const McConfig& cfg) {
    const EffectiveCoefficients coef(params);
    const double m = 2.0 - params.alpha;
    const long n = cfg.n_steps;
    StepTable table;
    table.x0 = coef.x0();
    table.linear = 1.0 + coef.a_drift() * cfg.horizon / static_cast<double>(n);
    table.shift.resize(static_cast<std::size_t>(n));
    table.vol_scale.resize(static_cast<std::size_t>(n));
    table.times.resize(static_cast<std::size_t>(n));
    double v_prev = 0.0;
    for (long k = 0; k < n; ++k) {
        const double t = cfg.horizon * static_cast<double>(k + 1) / static_cast<double>(n);
        const double v = coef.variance_clock(t);
        const double dv = v - v_prev;
        v_prev = v;
        // B(t) dt = delta^2 (1-alpha)(2-alpha) dv/2 and 2 C(t) dt = delta^2 (2-alpha)^2 dv.
        table.shift[k] = 0.5 * coef.delta_sq() * (1.0 - params.alpha) * m * dv;
        table.vol_scale[k] = std::sqrt(coef.delta_sq() * m * m * dv);
        table.times[k] = t;
    }
    return table;
}

// Returns the index of the absorbing step, or -1 if the path survives. When
// trajectory is non-null it receives x at every grid point.
long run_path(const StepTable& steps, std::uint64_t seed, long path, std::vector<double>* trajectory) {
    detail::Xoshiro256 engine(seed, static_cast<std::uint64_t>(path));
    boost::random::normal_distribution<double> normal;
    const long n = static_cast<long>(steps.shift.size());
    double x = steps.x0;
    if (trajectory) trajectory->push_back(x);
    for (long k = 0; k < n; ++k) {
        const double z = normal(engine);
        x = steps.linear * x + steps.shift[k] + steps.vol_scale[k] * std::sqrt(std::max(x, 0.0)) * z;
        if (x <= 0.0) {
            if (trajectory) trajectory->resize(static_cast<std::size_t>(n + 1), 0.0);
            return k;
        }
        if (trajectory) trajectory->push_back(x);
    }
    return -1;
}

unsigned worker_count(const McConfig& cfg) {
    unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
    threads = std::max(threads, 1U);
    return static_cast<unsigned>(std::min<long>(threads, cfg.n_paths));
}

}  // namespace

McConfig validate(const McConfig& cfg) {
    if (cfg.n_paths < 1)
        throw ParameterError(Constraint::kMcPaths, "invalid n_paths: must be >= 1, got " + std::to_string(cfg.n_paths));
    if (cfg.n_steps < 1)
        throw ParameterError(Constraint::kMcSteps, "invalid n_steps: must be >= 1, got " + std::to_string(cfg.n_steps));
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon))
        throw ParameterError(Constraint::kMcHorizon, "invalid horizon: must be positive, got " +
                                                         std::to_string(cfg.horizon));
    if (static_cast<double>(cfg.n_paths) * static_cast<double>(cfg.n_steps) > cfg.max_work)
        throw ParameterError(Constraint::kMcBudget, "n_paths * n_steps exceeds the work budget of " +
                                                        std::to_string(cfg.max_work));
    return cfg;
}

DefaultTimes simulate_fpt(const ModelParams& params, const McConfig& config) {
    const McConfig cfg = validate(config);
    const StepTable steps = make_steps(params, cfg);
    DefaultTimes out(static_cast<std::size_t>(cfg.n_paths));

    const unsigned workers = worker_count(cfg);
    auto work = [&](long begin, long end) {
        for (long i = begin; i < end; ++i) {
            const long k = run_path(steps, cfg.seed, i, nullptr);
            if (k >= 0) out[static_cast<std::size_t>(i)] = steps.times[static_cast<std::size_t>(k)];
        }
    };
    if (workers == 1) {
        work(0, cfg.n_paths);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const long begin = cfg.n_paths * w / workers;
            const long end = cfg.n_paths * (w + 1) / workers;
            pool.emplace_back(work, begin, end);
        }
    }
    return out;
}

std::vector<double> simulate_path(const ModelParams& params, const McConfig& config, long path_index) {
    McConfig cfg = config;
    cfg.n_paths = std::max(cfg.n_paths, path_index + 1);
    validate(cfg);
    const StepTable steps = make_steps(params, cfg);
    std::vector<double> trajectory;
    trajectory.reserve(static_cast<std::size_t>(cfg.n_steps + 1));
    run_path(steps, cfg.seed, path_index, &trajectory);
    return trajectory;
}

McResult estimate_default_probability(std::span<const std::optional<double>> default_times) {
    McResult r;
    r.n_paths = static_cast<long>(default_times.size());
    r.n_defaulted = std::count_if(default_times.begin(), default_times.end(),
                                  [](const auto& tau) { return tau.has_value(); });
    if (r.n_paths == 0) return r;
    const double n = static_cast<double>(r.n_paths);
    r.estimate = static_cast<double>(r.n_defaulted) / n;
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / n);
    return r;
}

McResult estimate_cds_spread(std::span<const std::optional<double>> default_times, const CdsContract& contract,
                             double rate) {
    const CdsContract c = validate(contract);
    const std::vector<PremiumDate> schedule = premium_schedule(c);
    const long n = static_cast<long>(default_times.size());
    if (n == 0) throw NumericalError("mc_cds_spread: no paths");

    std::vector<double> protection(static_cast<std::size_t>(n));
    std::vector<double> annuity(static_cast<std::size_t>(n));
    McResult r;
    r.n_paths = n;
    for (long i = 0; i < n; ++i) {
        const auto& tau = default_times[static_cast<std::size_t>(i)];
        if (tau && *tau <= c.maturity) {
            ++r.n_defaulted;
            protection[i] = (1.0 - c.recovery) * std::exp(-rate * *tau);
        }
        double a = 0.0;
        for (const PremiumDate& d : schedule)
            if (!tau || *tau > d.time) a += d.accrual * std::exp(-rate * d.time);
        annuity[i] = a;
    }

    auto ratio = [&](long begin, long end) {
        double prot = 0.0;
        double ann = 0.0;
        for (long i = begin; i < end; ++i) {
            prot += protection[i];
            ann += annuity[i];
        }
        return std::pair{prot, ann};
    };
    const auto [prot_total, ann_total] = ratio(0, n);
    if (!(ann_total > 0.0))
        throw NumericalError("mc_cds_spread: every path defaulted before the first premium date");
    r.estimate = 1e4 * prot_total / ann_total;

    const long batches = std::min<long>(kSpreadBatches, n);
    if (batches < 2) return r;
    std::vector<double> batch_spreads;
    for (long b = 0; b < batches; ++b) {
        const auto [prot, ann] = ratio(n * b / batches, n * (b + 1) / batches);
        if (ann > 0.0) batch_spreads.push_back(1e4 * prot / ann);
    }
    const double k = static_cast<double>(batch_spreads.size());
    if (k < 2) return r;
    double mean = 0.0;
    for (double s : batch_spreads) mean += s;
    mean /= k;
    double var = 0.0;
    for (double s : batch_spreads) var += (s - mean) * (s - mean);
    var /= (k - 1.0);
    r.std_error = std::sqrt(var / k);
    return r;
}

McResult mc_default_probability(const ModelParams& params, const McConfig& cfg) {
    const DefaultTimes taus = simulate_fpt(params, cfg);
    return estimate_default_probability(taus);
}

McResult mc_cds_spread(const ModelParams& params, const CdsContract& contract, const McConfig& cfg) {
    const CdsContract c = validate(contract);
    if (cfg.horizon < c.maturity)
        throw ParameterError(Constraint::kMcHorizon, "mc_cds_spread: horizon " + std::to_string(cfg.horizon) +
                                                         " is shorter than the maturity " +
                                                         std::to_string(c.maturity));
    const DefaultTimes taus = simulate_fpt(params, cfg);
    return estimate_cds_spread(taus, c, validate(params).rate);
}

}  // namespace mfcev::mc
