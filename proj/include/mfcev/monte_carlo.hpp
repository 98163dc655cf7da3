#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mfcev/cds.hpp"
#include "mfcev/model.hpp"

namespace mfcev::mc {

enum class Scheme { kEulerFullTruncation };

struct McConfig {
    long n_paths = 10000;
    long n_steps = 1000;
    double horizon = 1.0;
    std::uint64_t seed = 42;
    Scheme scheme = Scheme::kEulerFullTruncation;
    unsigned threads = 0;          // 0: std::thread::hardware_concurrency()
    double max_work = 2e10;        // bound on n_paths * n_steps
};

McConfig validate(const McConfig& cfg);

struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;
    long n_defaulted = 0;
    long n_paths = 0;
};

/// Default time of each path, std::nullopt if it survived to the horizon.
using DefaultTimes = std::vector<std::optional<double>>;

/// Simulates dx = [A x + B(t)] dt + sqrt(2 C(t) x) dW from x0 = S0^{2-alpha} on a uniform grid.
/// The deterministic parts of each step are integrated exactly against the variance clock
/// v(t) = t + beta^2 t^{2H}. A path whose updated state is <= 0 is absorbed and its default
/// time is the right end of that step. Path i draws from its own stream derived from
/// (seed, i), so the output does not depend on the thread count.
DefaultTimes simulate_fpt(const ModelParams& params, const McConfig& cfg);

/// Full state trajectory x(t_0..t_n) of one path, held at 0 after absorption.
std::vector<double> simulate_path(const ModelParams& params, const McConfig& cfg, long path_index);

/// Fraction of defaulted paths with binomial standard error sqrt(p (1 - p) / n).
McResult estimate_default_probability(std::span<const std::optional<double>> default_times);

inline constexpr int kSpreadBatches = 20;

/// Spread in bps from mean discounted protection over mean premium annuity; standard
/// error from kSpreadBatches contiguous batches of paths.
McResult estimate_cds_spread(std::span<const std::optional<double>> default_times,
                             const CdsContract& contract, double rate);

McResult mc_default_probability(const ModelParams& params, const McConfig& cfg);

/// Requires cfg.horizon >= contract.maturity.
McResult mc_cds_spread(const ModelParams& params, const CdsContract& contract, const McConfig& cfg);

}  // namespace mfcev::mc
