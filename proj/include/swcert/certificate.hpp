#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swcert/family.hpp"

namespace swcert {

enum class Verdict {
    CertifiedTheorem1,
    CertifiedTheorem2,
    NotCertified,
    AssumptionViolated,
};

std::string to_string(Verdict v);

/// Outcome of a certification attempt. When certified, the claim is
/// ||W|| <= c * exp(-lambda * |W|) for every product W drawn from the
/// restricted signal class, and the audit trail records every intermediate
/// quantity that entered the decision.
struct Certificate {
    Verdict verdict = Verdict::NotCertified;
    double lambda = 0.0;
    double c = 1.0;
    /// Left side of the robust inequality at this lambda (for the exact
    /// commutation check this reduces to rho*e^(lambda*m)).
    double lhs_value = 0.0;
    DerivedParams params;
    int N = 0;
    int dim = 0;
    int delta = 0;
    int Delta = 0;
    std::vector<std::pair<std::string, double>> audit;

    bool certified() const {
        return verdict == Verdict::CertifiedTheorem1 || verdict == Verdict::CertifiedTheorem2;
    }
};

/// Supremum of admissible decay rates: -ln(rho)/m. The bound is open;
/// callers must stay strictly below it. Throws for rho >= 1.
double lambda_max(double rho, int m);

/// Zero tolerance for the exact-commutation test, scaled to the family:
/// 1e-12 * max(1, M^(2*delta)).
double default_tol_zero(double M, int delta);

/// Uniform prefactor covering all products up to the induction-basis length
/// L = N*(m+Delta-1)+1: c = max(1, (M e^lambda)^L). Any product of length
/// l <= L has norm at most M^l, so this c is valid whenever M e^lambda >= 1,
/// and c = 1 suffices otherwise.
double overshoot_constant(double M, double lambda, int N, int m, int Delta);

/// Exact-commutation certificate: requires rho*e^(lambda*m) < 1 and every
/// commutator norm within tol_zero (vacuous with no unstable subsystem).
Certificate check_theorem1(const SwitchedFamily& fam, const IndexPartition& part,
                           const DerivedParams& dp, double lambda, double tol_zero);

/// Robust certificate: lhs = rho*e^(lambda*m) +
/// (sum of zeta_pq * eps_pq) * e^(lambda*(N*(m+Delta-1)+1)), certified
/// iff lhs <= 1.
Certificate check_theorem2(const SwitchedFamily& fam, const IndexPartition& part,
                           const DerivedParams& dp, double lambda);

/// Largest certifiable lambda, located by bisection over (0, lambda_max) to
/// resolution 1e-6 (the lhs is strictly increasing in lambda). NotCertified
/// when even lambda = 1e-9 fails.
Certificate best_lambda(const SwitchedFamily& fam, const IndexPartition& part,
                        const DerivedParams& dp);

/// Full pipeline: classify, derive parameters, then certify at the given
/// lambda (exact check first, robust check as fallback) or at the best
/// lambda found. Returns AssumptionViolated instead of throwing when the
/// contraction assumption cannot be met or no subsystem is Schur stable.
Certificate certify(const SwitchedFamily& fam, std::optional<double> lambda);

}  // namespace swcert
