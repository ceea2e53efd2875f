#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swcert/family.hpp"

namespace swcert {

struct Segment {
    int index = 0;  // 0-based subsystem index
    int dwell = 0;

    bool operator==(const Segment&) const = default;
};

/// Finite window of a switching signal as (index, dwell) segments.
/// Consecutive segments carry distinct indices; the final segment may be
/// truncated by the horizon, so it is exempt from minimum-dwell checks.
struct SwitchingSignal {
    std::vector<Segment> segments;

    int horizon() const;
    /// Active subsystem at each time step, expanded to `upto` steps
    /// (upto <= horizon).
    std::vector<int> expand(int upto) const;

    bool operator==(const SwitchingSignal&) const = default;
};

struct SignalViolation {
    int segment = 0;
    std::string code;
    std::string detail;
};

struct ValidityReport {
    bool valid = true;
    std::vector<SignalViolation> violations;
};

/// Membership check. restricted=false checks the plain dwell-time class
/// (every complete dwell in [delta, Delta]); restricted=true additionally
/// requires dwell >= m on complete stable segments and that every unstable
/// segment with a successor is followed by a stable one. Violations are
/// reported per segment, not thrown.
ValidityReport validate(const SwitchingSignal& sig, const SwitchedFamily& fam,
                        const IndexPartition& part, const DerivedParams& dp, bool restricted);

/// Random member of the restricted class covering at least `horizon` steps.
/// First index uniform over all subsystems; after an unstable segment the
/// next index is uniform over the stable set, otherwise uniform over the
/// other subsystems. Stable dwells are uniform on [m, Delta], unstable on
/// [delta, Delta]. Deterministic given the seed. Throws for single-subsystem
/// families (no valid switch exists) and when no subsystem is stable.
SwitchingSignal random_signal(const SwitchedFamily& fam, const IndexPartition& part,
                              const DerivedParams& dp, int horizon, std::uint64_t seed);

/// `pattern` repeated `repetitions` times. The pattern must be nonempty and
/// must not start and end with the same index (repetition would merge the
/// seam into one over-long segment).
SwitchingSignal periodic_signal(const std::vector<Segment>& pattern, int repetitions);

/// All signals of total horizon exactly max_len whose complete segments obey
/// the class rules; the final segment is truncation-exempt (any dwell in
/// [1, Delta] that exhausts the horizon). Deterministic order: depth-first,
/// indices ascending, dwells ascending. max_len is capped at 30; beyond that
/// an error carrying a count estimate is thrown.
std::vector<SwitchingSignal> enumerate_signals(const SwitchedFamily& fam,
                                               const IndexPartition& part,
                                               const DerivedParams& dp, int max_len,
                                               bool restricted);

}  // namespace swcert
