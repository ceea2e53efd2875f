#pragma once

#include <stdexcept>
#include <vector>

#include "swcert/matrix.hpp"

namespace swcert {

/// Raised when the contraction assumption cannot be met: no dwell length
/// m in [delta, Delta] makes every Schur stable subsystem power contractive,
/// or the family has no Schur stable subsystem at all.
class AssumptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A family {A_1..A_N} of same-dimension square matrices together with the
/// admissible minimum/maximum dwell times. Indices are 0-based internally;
/// serialization uses 1-based indices.
struct SwitchedFamily {
    std::vector<Matrix> matrices;
    int delta = 1;
    int Delta = 2;

    SwitchedFamily(std::vector<Matrix> mats, int delta_, int Delta_);

    int count() const { return static_cast<int>(matrices.size()); }
    int dim() const { return matrices.front().dim(); }
};

/// Disjoint partition of subsystem indices into Schur stable and unstable.
/// "Unstable" includes the marginally stable: an index is stable only when
/// its spectral radius is below 1 - 1e-9.
struct IndexPartition {
    std::vector<int> stable;
    std::vector<int> unstable;

    bool is_stable(int i) const;
};

IndexPartition classify(const SwitchedFamily& fam);

struct MRho {
    int m = 0;
    double rho = 0.0;
};

/// Smallest m in [delta, Delta] with ||A_j^n|| < 1 for every stable j and
/// every n in [m, Delta]; rho is the max of those norms. Throws
/// AssumptionError when no such m exists or there is no stable subsystem.
MRho find_m_rho(const SwitchedFamily& fam, const IndexPartition& part);

/// One value per commutator power pair (p, q) in {delta,1} x {delta,1},
/// where p powers the unstable factor and q the stable one.
struct PqTable {
    double delta_delta = 0.0;
    double one_delta = 0.0;
    double delta_one = 0.0;
    double one_one = 0.0;
};

/// Combinatorial weights multiplying the commutator bounds in the
/// robust-certificate inequality:
///   zeta_dd = K1*K2*M^((N-1)(m+Delta-1)+m+Delta-2*delta)
///   zeta_1d = K1*(Delta-K2*delta)*M^((N-1)(m+Delta-1)+m+Delta-delta-1)
///   zeta_d1 = (m-K1*delta)*K2*M^((N-1)(m+Delta-1)+m+Delta-delta-1)
///   zeta_11 = (m-K1*delta)*(Delta-K2*delta)*M^((N-1)(m+Delta-1)+m+Delta-2)
/// with K1 = floor(m/delta), K2 = floor(Delta/delta). Throws
/// std::overflow_error (naming the exponent) if a nonzero term is not finite.
PqTable zeta_table(double M, int N, int m, int delta, int Delta);

/// Tightest admissible commutator-norm bounds: eps_pq = max over unstable i,
/// stable j of ||A_i^p A_j^q - A_j^q A_i^p||. All-zero when there is no
/// unstable subsystem (the commutator conditions are vacuous).
PqTable eps_table(const SwitchedFamily& fam, const IndexPartition& part);

/// Everything the certificate checks consume, derived from the family.
struct DerivedParams {
    double M = 0.0;  // max subsystem norm
    int m = 0;
    double rho = 0.0;
    int K1 = 0;
    int K2 = 0;
    PqTable zeta;
    PqTable eps;
};

DerivedParams derive_params(const SwitchedFamily& fam, const IndexPartition& part);

}  // namespace swcert
