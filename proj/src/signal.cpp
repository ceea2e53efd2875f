#include "swcert/signal.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "swcert/rng.hpp"

namespace swcert {

int SwitchingSignal::horizon() const {
    int total = 0;
    for (const auto& seg : segments) total += seg.dwell;
    return total;
}

std::vector<int> SwitchingSignal::expand(int upto) const {
    if (upto > horizon()) throw std::invalid_argument("expansion exceeds signal horizon");
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(upto));
    for (const auto& seg : segments) {
        for (int k = 0; k < seg.dwell && static_cast<int>(idx.size()) < upto; ++k)
            idx.push_back(seg.index);
        if (static_cast<int>(idx.size()) == upto) break;
    }
    return idx;
}

ValidityReport validate(const SwitchingSignal& sig, const SwitchedFamily& fam,
                        const IndexPartition& part, const DerivedParams& dp, bool restricted) {
    ValidityReport report;
    auto flag = [&](int seg, const char* code, std::string detail) {
        report.valid = false;
        report.violations.push_back({seg, code, std::move(detail)});
    };

    const int n = static_cast<int>(sig.segments.size());
    for (int k = 0; k < n; ++k) {
        const Segment& seg = sig.segments[k];
        const bool last = (k == n - 1);
        std::ostringstream at;
        at << "segment " << k << " (index " << seg.index + 1 << ", dwell " << seg.dwell << ")";

        if (seg.index < 0 || seg.index >= fam.count()) {
            flag(k, "index_out_of_range", at.str());
            continue;
        }
        if (seg.dwell < 1) {
            flag(k, "nonpositive_dwell", at.str());
            continue;
        }
        if (k > 0 && seg.index == sig.segments[k - 1].index)
            flag(k, "repeated_index", at.str() + ": same subsystem as previous segment");
        if (seg.dwell > fam.Delta) flag(k, "dwell_above_max", at.str());
        // The final segment may be cut short by the horizon, so lower bounds
        // apply only to complete segments.
        if (!last && seg.dwell < fam.delta) flag(k, "dwell_below_min", at.str());
        if (restricted) {
            if (!last && part.is_stable(seg.index) && seg.dwell < dp.m)
                flag(k, "stable_dwell_below_m", at.str());
            if (!last && !part.is_stable(seg.index) &&
                !part.is_stable(sig.segments[k + 1].index))
                flag(k, "unstable_successor", at.str() + ": followed by an unstable subsystem");
        }
    }
    return report;
}

SwitchingSignal random_signal(const SwitchedFamily& fam, const IndexPartition& part,
                              const DerivedParams& dp, int horizon, std::uint64_t seed) {
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    if (fam.count() == 1)
        throw std::invalid_argument(
            "single-subsystem family admits no switching signal: no valid switch exists");
    if (part.stable.empty())
        throw std::invalid_argument("random_signal requires a Schur stable subsystem");

    Rng rng(seed);
    SwitchingSignal sig;
    int current = rng.uniform_int(0, fam.count() - 1);
    int total = 0;
    while (total < horizon) {
        const bool stable = part.is_stable(current);
        const int dwell = stable ? rng.uniform_int(dp.m, fam.Delta)
                                 : rng.uniform_int(fam.delta, fam.Delta);
        sig.segments.push_back({current, dwell});
        total += dwell;
        if (!stable) {
            current = rng.pick(part.stable);
        } else {
            std::vector<int> others;
            for (int i = 0; i < fam.count(); ++i)
                if (i != current) others.push_back(i);
            current = rng.pick(others);
        }
    }
    return sig;
}

SwitchingSignal periodic_signal(const std::vector<Segment>& pattern, int repetitions) {
    if (pattern.empty()) throw std::invalid_argument("pattern must be nonempty");
    if (repetitions < 1) throw std::invalid_argument("repetitions must be positive");
    if (pattern.front().index == pattern.back().index)
        throw std::invalid_argument(
            "pattern starts and ends with the same subsystem: repetition would merge segments");
    for (const auto& seg : pattern)
        if (seg.dwell < 1) throw std::invalid_argument("pattern dwells must be positive");

    SwitchingSignal sig;
    sig.segments.reserve(pattern.size() * static_cast<std::size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r)
        sig.segments.insert(sig.segments.end(), pattern.begin(), pattern.end());
    return sig;
}

namespace {

// Minimum dwell a complete segment of `index` must reach.
int class_min_dwell(int index, const IndexPartition& part, const DerivedParams& dp, int delta,
                    bool restricted) {
    return (restricted && part.is_stable(index)) ? dp.m : delta;
}

double count_estimate(int N, int delta, int Delta, int max_len) {
    const double branches = static_cast<double>(N) * (Delta - delta + 1);
    return std::pow(branches, std::ceil(static_cast<double>(max_len) / delta));
}

}  // namespace

std::vector<SwitchingSignal> enumerate_signals(const SwitchedFamily& fam,
                                               const IndexPartition& part,
                                               const DerivedParams& dp, int max_len,
                                               bool restricted) {
    if (max_len < 1) throw std::invalid_argument("max_len must be positive");
    if (max_len > 30) {
        std::ostringstream os;
        os << "max_len " << max_len << " exceeds the enumeration cap of 30 (roughly "
           << count_estimate(fam.count(), fam.delta, fam.Delta, max_len)
           << " signals)";
        throw std::invalid_argument(os.str());
    }

    std::vector<SwitchingSignal> out;
    std::vector<Segment> stack;

    // Depth-first over segments: indices ascending, dwells ascending.
    auto rec = [&](auto&& self, int left, int last) -> void {
        for (int i = 0; i < fam.count(); ++i) {
            if (last >= 0) {
                if (i == last) continue;
                if (restricted && !part.is_stable(last) && !part.is_stable(i)) continue;
            }
            const int lo = class_min_dwell(i, part, dp, fam.delta, restricted);
            const int cap = std::min(fam.Delta, left);
            for (int d = 1; d <= cap; ++d) {
                if (d == left) {
                    stack.push_back({i, d});
                    out.push_back(SwitchingSignal{stack});
                    stack.pop_back();
                } else if (d >= lo) {
                    stack.push_back({i, d});
                    self(self, left - d, i);
                    stack.pop_back();
                }
            }
        }
    };
    rec(rec, max_len, -1);
    return out;
}

}  // namespace swcert
