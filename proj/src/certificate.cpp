#include "swcert/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swcert {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::CertifiedTheorem1: return "certified_theorem1";
        case Verdict::CertifiedTheorem2: return "certified_theorem2";
        case Verdict::NotCertified: return "not_certified";
        case Verdict::AssumptionViolated: return "assumption_violated";
    }
    return "unknown";
}

double lambda_max(double rho, int m) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("lambda_max requires 0 < rho < 1");
    if (m < 1) throw std::invalid_argument("lambda_max requires m >= 1");
    return -std::log(rho) / m;
}

double default_tol_zero(double M, int delta) {
    return 1e-12 * std::max(1.0, std::pow(M, 2 * delta));
}

double overshoot_constant(double M, double lambda, int N, int m, int Delta) {
    const int L = N * (m + Delta - 1) + 1;
    const double c = std::max(1.0, std::pow(M * std::exp(lambda), L));
    if (!std::isfinite(c)) throw std::overflow_error("overshoot constant overflowed");
    return c;
}

namespace {

int basis_length(int N, int m, int Delta) { return N * (m + Delta - 1) + 1; }

Certificate base_certificate(const SwitchedFamily& fam, const DerivedParams& dp, double lambda) {
    Certificate cert;
    cert.lambda = lambda;
    cert.params = dp;
    cert.N = fam.count();
    cert.dim = fam.dim();
    cert.delta = fam.delta;
    cert.Delta = fam.Delta;
    cert.c = overshoot_constant(dp.M, lambda, fam.count(), dp.m, fam.Delta);
    cert.audit.emplace_back("lambda", lambda);
    cert.audit.emplace_back("M", dp.M);
    cert.audit.emplace_back("m", dp.m);
    cert.audit.emplace_back("rho", dp.rho);
    cert.audit.emplace_back("K1", dp.K1);
    cert.audit.emplace_back("K2", dp.K2);
    cert.audit.emplace_back("c", cert.c);
    return cert;
}

}  // namespace

Certificate check_theorem1(const SwitchedFamily& fam, const IndexPartition& part,
                           const DerivedParams& dp, double lambda, double tol_zero) {
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    if (part.stable.empty()) {
        Certificate cert;
        cert.verdict = Verdict::AssumptionViolated;
        cert.lambda = lambda;
        cert.N = fam.count();
        cert.dim = fam.dim();
        cert.delta = fam.delta;
        cert.Delta = fam.Delta;
        cert.audit.emplace_back("stable_count", 0.0);
        return cert;
    }

    Certificate cert = base_certificate(fam, dp, lambda);
    const double contraction = dp.rho * std::exp(lambda * dp.m);
    cert.lhs_value = contraction;
    cert.audit.emplace_back("rho_exp_lambda_m", contraction);
    cert.audit.emplace_back("tol_zero", tol_zero);
    cert.audit.emplace_back("eps_delta_delta", dp.eps.delta_delta);
    cert.audit.emplace_back("eps_one_delta", dp.eps.one_delta);
    cert.audit.emplace_back("eps_delta_one", dp.eps.delta_one);
    cert.audit.emplace_back("eps_one_one", dp.eps.one_one);

    const double worst_eps = std::max({dp.eps.delta_delta, dp.eps.one_delta, dp.eps.delta_one,
                                       dp.eps.one_one});
    const bool commute = part.unstable.empty() || worst_eps <= tol_zero;
    cert.audit.emplace_back("commutators_vanish", commute ? 1.0 : 0.0);
    cert.verdict = (contraction < 1.0 && commute) ? Verdict::CertifiedTheorem1
                                                  : Verdict::NotCertified;
    return cert;
}

Certificate check_theorem2(const SwitchedFamily& fam, const IndexPartition& part,
                           const DerivedParams& dp, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    if (part.stable.empty()) {
        Certificate cert;
        cert.verdict = Verdict::AssumptionViolated;
        cert.lambda = lambda;
        cert.N = fam.count();
        cert.dim = fam.dim();
        cert.delta = fam.delta;
        cert.Delta = fam.Delta;
        cert.audit.emplace_back("stable_count", 0.0);
        return cert;
    }

    Certificate cert = base_certificate(fam, dp, lambda);
    const double contraction = dp.rho * std::exp(lambda * dp.m);
    const double weighted = dp.zeta.delta_delta * dp.eps.delta_delta +
                            dp.zeta.one_delta * dp.eps.one_delta +
                            dp.zeta.delta_one * dp.eps.delta_one +
                            dp.zeta.one_one * dp.eps.one_one;
    const double amplifier = std::exp(lambda * basis_length(fam.count(), dp.m, fam.Delta));
    const double lhs = contraction + weighted * amplifier;
    cert.lhs_value = lhs;
    cert.audit.emplace_back("rho_exp_lambda_m", contraction);
    cert.audit.emplace_back("zeta_delta_delta", dp.zeta.delta_delta);
    cert.audit.emplace_back("zeta_one_delta", dp.zeta.one_delta);
    cert.audit.emplace_back("zeta_delta_one", dp.zeta.delta_one);
    cert.audit.emplace_back("zeta_one_one", dp.zeta.one_one);
    cert.audit.emplace_back("eps_delta_delta", dp.eps.delta_delta);
    cert.audit.emplace_back("eps_one_delta", dp.eps.one_delta);
    cert.audit.emplace_back("eps_delta_one", dp.eps.delta_one);
    cert.audit.emplace_back("eps_one_one", dp.eps.one_one);
    cert.audit.emplace_back("exp_lambda_basis", amplifier);
    cert.audit.emplace_back("lhs", lhs);

    cert.verdict = (contraction < 1.0 && lhs <= 1.0) ? Verdict::CertifiedTheorem2
                                                     : Verdict::NotCertified;
    return cert;
}

Certificate best_lambda(const SwitchedFamily& fam, const IndexPartition& part,
                        const DerivedParams& dp) {
    constexpr double kFloor = 1e-9;
    constexpr double kResolution = 1e-6;

    if (part.stable.empty()) return check_theorem2(fam, part, dp, kFloor);

    Certificate at_floor = check_theorem2(fam, part, dp, kFloor);
    if (!at_floor.certified()) {
        at_floor.verdict = Verdict::NotCertified;
        return at_floor;
    }

    // The lhs is strictly increasing in lambda, so bisection brackets the
    // certifiable/uncertifiable boundary.
    double lo = kFloor;
    double hi = lambda_max(dp.rho, dp.m);
    while (hi - lo > kResolution) {
        const double mid = 0.5 * (lo + hi);
        if (check_theorem2(fam, part, dp, mid).certified())
            lo = mid;
        else
            hi = mid;
    }
    return check_theorem2(fam, part, dp, lo);
}

Certificate certify(const SwitchedFamily& fam, std::optional<double> lambda) {
    const IndexPartition part = classify(fam);

    Certificate failure;
    failure.N = fam.count();
    failure.dim = fam.dim();
    failure.delta = fam.delta;
    failure.Delta = fam.Delta;
    failure.verdict = Verdict::AssumptionViolated;
    if (part.stable.empty()) {
        failure.audit.emplace_back("stable_count", 0.0);
        return failure;
    }

    DerivedParams dp;
    try {
        dp = derive_params(fam, part);
    } catch (const AssumptionError&) {
        failure.audit.emplace_back("assumption_holds", 0.0);
        return failure;
    }

    const double tol_zero = default_tol_zero(dp.M, fam.delta);
    if (lambda) {
        Certificate first = check_theorem1(fam, part, dp, *lambda, tol_zero);
        if (first.verdict != Verdict::NotCertified) return first;
        return check_theorem2(fam, part, dp, *lambda);
    }

    Certificate best = best_lambda(fam, part, dp);
    if (best.certified()) {
        // Report the stronger exact-commutation claim when it applies.
        Certificate exact = check_theorem1(fam, part, dp, best.lambda, tol_zero);
        if (exact.verdict == Verdict::CertifiedTheorem1) return exact;
    }
    return best;
}

}  // namespace swcert
