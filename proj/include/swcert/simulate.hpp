#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swcert/certificate.hpp"
#include "swcert/signal.hpp"

namespace swcert {

/// State evolution x(t+1) = A_{sigma(t)} x(t), t = 0..T.
struct Trajectory {
    std::vector<Vec> states;    // states[t], t = 0..T
    std::vector<double> norms;  // ||x(t)||
};

Trajectory simulate(const SwitchedFamily& fam, const SwitchingSignal& sig, const Vec& x0, int T);

/// Norms of the left-growing products A_{sigma(t-1)}...A_{sigma(0)},
/// t = 1..T.
std::vector<double> product_norms(const SwitchedFamily& fam, const SwitchingSignal& sig, int T);

struct DecayFit {
    double rate = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least-squares line through (t, ln norms[t]) over t >= 1; zero norms are
/// skipped. Requires at least 10 positive samples.
DecayFit fit_decay(std::span<const double> norms);

struct RunStats {
    int run = 0;
    double max_ratio = 0.0;  // max_t ||x(t)|| / ||x0||
    double rate = 0.0;
    double r2 = 0.0;
    bool divergent = false;
};

struct MonteCarloSummary {
    int num_runs = 0;
    int horizon = 0;
    std::uint64_t seed = 0;
    double x0_box = 0.0;
    double divergence_threshold = 1e6;
    int divergent_runs = 0;
    double rate_min = 0.0;
    double rate_max = 0.0;
    double rate_mean = 0.0;
    double max_ratio = 0.0;
    std::vector<RunStats> runs;
};

struct McRunInput {
    SwitchingSignal signal;
    Vec x0;
};

/// Signal and initial state for Monte-Carlo run `run`, derived from
/// (seed, run) alone so that runs can be reproduced individually.
McRunInput monte_carlo_run_input(const SwitchedFamily& fam, const IndexPartition& part,
                                 const DerivedParams& dp, std::uint64_t seed, int run,
                                 int horizon, double x0_box);

/// Independent random-signal experiments: run r uses the restricted signal
/// from derive_seed(seed, r) and an initial state drawn uniformly from
/// [-x0_box, x0_box]^d. A run is divergent when its norm ratio exceeds
/// divergence_threshold. Runs are embarrassingly parallel; results are
/// keyed by run index, so the parallel path is bit-identical to the serial
/// one.
MonteCarloSummary monte_carlo(const SwitchedFamily& fam, const IndexPartition& part,
                              const DerivedParams& dp, int num_signals, int horizon,
                              double x0_box, std::uint64_t seed, bool parallel = true);

struct OracleViolation {
    SwitchingSignal signal;  // prefix whose product breaks the bound
    int length = 0;
    double norm = 0.0;
    double bound = 0.0;
};

struct OracleReport {
    int max_len = 0;
    long long products_checked = 0;
    long long violation_count = 0;
    double worst_excess = 0.0;  // max of norm/bound over all products
    SwitchingSignal worst_signal;
    int worst_length = 0;
    double worst_norm = 0.0;
    double worst_bound = 0.0;
    std::vector<OracleViolation> first_violations;  // capped sample

    bool sound() const { return violation_count == 0; }
};

/// Exhaustive certificate audit: walks every admissible product of length
/// 1..max_len in the restricted class (each distinct product once) and tests
/// ||W|| <= c * exp(-lambda * |W|). Requires a certified certificate. The
/// parallel path splits the prefix tree over a frontier and merges in a
/// fixed order, so its report is bit-identical to the serial one.
OracleReport oracle_check(const SwitchedFamily& fam, const IndexPartition& part,
                          const DerivedParams& dp, const Certificate& cert, int max_len,
                          bool parallel = true);

}  // namespace swcert
