#include "swcert/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "swcert/rng.hpp"

namespace swcert {

Trajectory simulate(const SwitchedFamily& fam, const SwitchingSignal& sig, const Vec& x0,
                    int T) {
    if (static_cast<int>(x0.size()) != fam.dim())
        throw std::invalid_argument("initial state dimension does not match the family");
    if (T < 0 || T > sig.horizon())
        throw std::invalid_argument("T must lie within the signal horizon");

    const std::vector<int> idx = sig.expand(T);
    Trajectory traj;
    traj.states.reserve(static_cast<std::size_t>(T) + 1);
    traj.norms.reserve(static_cast<std::size_t>(T) + 1);
    traj.states.push_back(x0);
    traj.norms.push_back(vec_norm(x0));
    for (int t = 0; t < T; ++t) {
        traj.states.push_back(mat_vec(fam.matrices[idx[static_cast<std::size_t>(t)]],
                                      traj.states.back()));
        traj.norms.push_back(vec_norm(traj.states.back()));
    }
    return traj;
}

std::vector<double> product_norms(const SwitchedFamily& fam, const SwitchingSignal& sig,
                                  int T) {
    if (T < 0 || T > sig.horizon())
        throw std::invalid_argument("T must lie within the signal horizon");
    const std::vector<int> idx = sig.expand(T);
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>(T));
    Matrix W = Matrix::identity(fam.dim());
    for (int t = 0; t < T; ++t) {
        W = mat_mul(fam.matrices[idx[static_cast<std::size_t>(t)]], W);
        norms.push_back(spectral_norm(W));
    }
    return norms;
}

DecayFit fit_decay(std::span<const double> norms) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t t = 1; t < norms.size(); ++t) {
        if (!(norms[t] > 0.0)) continue;
        const double x = static_cast<double>(t);
        const double y = std::log(norms[t]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 10) throw std::invalid_argument("fit_decay requires at least 10 positive samples");

    DecayFit fit;
    const double denom = n * sxx - sx * sx;
    fit.rate = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.rate * sx) / n;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t t = 1; t < norms.size(); ++t) {
        if (!(norms[t] > 0.0)) continue;
        const double y = std::log(norms[t]);
        const double pred = fit.intercept + fit.rate * static_cast<double>(t);
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    fit.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

McRunInput monte_carlo_run_input(const SwitchedFamily& fam, const IndexPartition& part,
                                 const DerivedParams& dp, std::uint64_t seed, int run,
                                 int horizon, double x0_box) {
    const std::uint64_t run_seed = Rng::derive_seed(seed, static_cast<std::uint64_t>(run));
    McRunInput input;
    input.signal = random_signal(fam, part, dp, horizon, run_seed);
    Rng x0_rng(Rng::derive_seed(run_seed, 0x78305F626F78ULL));
    input.x0.resize(static_cast<std::size_t>(fam.dim()));
    for (auto& v : input.x0) v = x0_rng.uniform_real(-x0_box, x0_box);
    return input;
}

namespace {

RunStats run_one(const SwitchedFamily& fam, const IndexPartition& part, const DerivedParams& dp,
                 int run, int horizon, double x0_box, std::uint64_t seed, double threshold) {
    const McRunInput input = monte_carlo_run_input(fam, part, dp, seed, run, horizon, x0_box);
    const Trajectory traj = simulate(fam, input.signal, input.x0, horizon);
    RunStats stats;
    stats.run = run;
    const double n0 = traj.norms.front();
    if (n0 > 0.0)
        for (double n : traj.norms) stats.max_ratio = std::max(stats.max_ratio, n / n0);
    stats.divergent = stats.max_ratio > threshold;
    try {
        const DecayFit fit = fit_decay(traj.norms);
        stats.rate = fit.rate;
        stats.r2 = fit.r2;
    } catch (const std::invalid_argument&) {
        // Degenerate trajectory (e.g. x0 == 0 underflows immediately).
        stats.rate = 0.0;
        stats.r2 = 0.0;
    }
    return stats;
}

}  // namespace

MonteCarloSummary monte_carlo(const SwitchedFamily& fam, const IndexPartition& part,
                              const DerivedParams& dp, int num_signals, int horizon,
                              double x0_box, std::uint64_t seed, bool parallel) {
    if (num_signals < 0) throw std::invalid_argument("num_signals must be nonnegative");

    MonteCarloSummary summary;
    summary.num_runs = num_signals;
    summary.horizon = horizon;
    summary.seed = seed;
    summary.x0_box = x0_box;
    summary.runs.resize(static_cast<std::size_t>(num_signals));

    // Each run derives its own stream from (seed, run index), so results are
    // identical whether or not the loop is parallel.
    std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int r = 0; r < num_signals; ++r) {
        try {
            summary.runs[static_cast<std::size_t>(r)] =
                run_one(fam, part, dp, r, horizon, x0_box, seed, summary.divergence_threshold);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    if (num_signals > 0) {
        summary.rate_min = summary.runs.front().rate;
        summary.rate_max = summary.runs.front().rate;
        double acc = 0.0;
        for (const RunStats& rs : summary.runs) {
            summary.divergent_runs += rs.divergent ? 1 : 0;
            summary.rate_min = std::min(summary.rate_min, rs.rate);
            summary.rate_max = std::max(summary.rate_max, rs.rate);
            summary.max_ratio = std::max(summary.max_ratio, rs.max_ratio);
            acc += rs.rate;
        }
        summary.rate_mean = acc / num_signals;
    }
    return summary;
}

namespace {

struct OracleAccumulator {
    long long checked = 0;
    long long violations = 0;
    double worst_excess = -1.0;
    std::vector<Segment> worst_signal;
    int worst_length = 0;
    double worst_norm = 0.0;
    double worst_bound = 0.0;
    std::vector<OracleViolation> firsts;

    static constexpr int kMaxStoredViolations = 20;

    void merge(const OracleAccumulator& other) {
        checked += other.checked;
        violations += other.violations;
        if (other.worst_excess > worst_excess) {
            worst_excess = other.worst_excess;
            worst_signal = other.worst_signal;
            worst_length = other.worst_length;
            worst_norm = other.worst_norm;
            worst_bound = other.worst_bound;
        }
        for (const auto& v : other.firsts)
            if (static_cast<int>(firsts.size()) < kMaxStoredViolations) firsts.push_back(v);
    }
};

struct OracleNode {
    Matrix W;
    int t;                       // product length so far
    int run;                     // steps taken in the current segment
    std::vector<Segment> segs;   // segments so far; segs.back().dwell == run
};

class OracleWalker {
public:
    OracleWalker(const SwitchedFamily& fam, const IndexPartition& part, const DerivedParams& dp,
                 double lambda, double c, int max_len)
        : fam_(fam), part_(part), dp_(dp), lambda_(lambda), c_(c), max_len_(max_len) {}

    OracleNode root(int index) const {
        return OracleNode{fam_.matrices[index], 1, 1, {Segment{index, 1}}};
    }

    OracleNode advance(const OracleNode& n, int index) const {
        OracleNode next{mat_mul(fam_.matrices[index], n.W), n.t + 1, 0, n.segs};
        if (index == n.segs.back().index) {
            next.run = n.run + 1;
            next.segs.back().dwell = next.run;
        } else {
            next.run = 1;
            next.segs.push_back({index, 1});
        }
        return next;
    }

    void check(const OracleNode& n, OracleAccumulator& acc) const {
        const double norm = spectral_norm(n.W);
        const double bound = c_ * std::exp(-lambda_ * n.t);
        const double excess = norm / bound;
        acc.checked += 1;
        if (excess > acc.worst_excess) {
            acc.worst_excess = excess;
            acc.worst_signal = n.segs;
            acc.worst_length = n.t;
            acc.worst_norm = norm;
            acc.worst_bound = bound;
        }
        // Small relative slack absorbs SVD rounding only.
        if (norm > bound * (1.0 + 1e-12)) {
            acc.violations += 1;
            if (static_cast<int>(acc.firsts.size()) < OracleAccumulator::kMaxStoredViolations)
                acc.firsts.push_back({SwitchingSignal{n.segs}, n.t, norm, bound});
        }
    }

    // Children in a fixed order: extend the current segment, then switch to
    // each admissible subsystem in ascending order.
    template <typename Fn>
    void for_each_child(const OracleNode& n, Fn&& fn) const {
        if (n.t == max_len_) return;
        const int cur = n.segs.back().index;
        if (n.run < fam_.Delta) fn(advance(n, cur));
        const int lo = part_.is_stable(cur) ? dp_.m : fam_.delta;
        if (n.run >= lo) {
            for (int j = 0; j < fam_.count(); ++j) {
                if (j == cur) continue;
                if (!part_.is_stable(cur) && !part_.is_stable(j)) continue;
                fn(advance(n, j));
            }
        }
    }

    void dfs(const OracleNode& n, OracleAccumulator& acc) const {
        check(n, acc);
        for_each_child(n, [&](const OracleNode& child) { dfs(child, acc); });
    }

private:
    const SwitchedFamily& fam_;
    const IndexPartition& part_;
    const DerivedParams& dp_;
    double lambda_;
    double c_;
    int max_len_;
};

}  // namespace

OracleReport oracle_check(const SwitchedFamily& fam, const IndexPartition& part,
                          const DerivedParams& dp, const Certificate& cert, int max_len,
                          bool parallel) {
    if (!cert.certified())
        throw std::invalid_argument("oracle_check requires a certified certificate");
    if (max_len < 1 || max_len > 30)
        throw std::invalid_argument("oracle max_len must lie in [1, 30]");

    const OracleWalker walker(fam, part, dp, cert.lambda, cert.c, max_len);

    // Expand a frontier in depth-first order, checking the shallow nodes as
    // we go, then search the subtrees below the frontier (possibly in
    // parallel) and merge in frontier order. The merged report does not
    // depend on the thread schedule.
    const int frontier_depth = std::min(max_len, 6);
    OracleAccumulator shallow;
    std::vector<OracleNode> frontier;
    auto expand = [&](auto&& self, const OracleNode& n) -> void {
        walker.check(n, shallow);
        if (n.t == frontier_depth) {
            frontier.push_back(n);
            return;
        }
        walker.for_each_child(n, [&](const OracleNode& child) { self(self, child); });
    };
    for (int i = 0; i < fam.count(); ++i) expand(expand, walker.root(i));

    std::vector<OracleAccumulator> per_node(frontier.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::size_t k = 0; k < frontier.size(); ++k)
        walker.for_each_child(frontier[k],
                              [&](const OracleNode& child) { walker.dfs(child, per_node[k]); });

    OracleAccumulator total = shallow;
    for (const auto& acc : per_node) total.merge(acc);

    OracleReport report;
    report.max_len = max_len;
    report.products_checked = total.checked;
    report.violation_count = total.violations;
    report.worst_excess = total.worst_excess;
    report.worst_signal = SwitchingSignal{total.worst_signal};
    report.worst_length = total.worst_length;
    report.worst_norm = total.worst_norm;
    report.worst_bound = total.worst_bound;
    report.first_violations = std::move(total.firsts);
    return report;
}

}  // namespace swcert
