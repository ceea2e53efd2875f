#include "swcert/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace swcert {

namespace {
constexpr double kStableThreshold = 1.0 - 1e-9;
}

SwitchedFamily::SwitchedFamily(std::vector<Matrix> mats, int delta_, int Delta_)
    : matrices(std::move(mats)), delta(delta_), Delta(Delta_) {
    if (matrices.empty()) throw std::invalid_argument("family must contain at least one matrix");
    const int d = matrices.front().dim();
    for (const auto& m : matrices)
        if (m.dim() != d)
            throw std::invalid_argument("all matrices in a family must share the same dimension");
    if (delta < 1 || Delta < 1) throw std::invalid_argument("dwell times must be positive");
    if (delta >= Delta) throw std::invalid_argument("minimum dwell time must be below the maximum");
}

bool IndexPartition::is_stable(int i) const {
    return std::find(stable.begin(), stable.end(), i) != stable.end();
}

IndexPartition classify(const SwitchedFamily& fam) {
    IndexPartition part;
    for (int i = 0; i < fam.count(); ++i) {
        // Marginally stable counts as unstable, hence the strict margin.
        if (spectral_radius(fam.matrices[i]) < kStableThreshold)
            part.stable.push_back(i);
        else
            part.unstable.push_back(i);
    }
    return part;
}

MRho find_m_rho(const SwitchedFamily& fam, const IndexPartition& part) {
    if (part.stable.empty())
        throw AssumptionError("family has no Schur stable subsystem");

    // norms[j][n - delta] = ||A_j^n|| for n in [delta, Delta]
    const int span = fam.Delta - fam.delta + 1;
    std::vector<std::vector<double>> norms(part.stable.size(), std::vector<double>(span));
    for (std::size_t j = 0; j < part.stable.size(); ++j) {
        Matrix power = mat_pow(fam.matrices[part.stable[j]], fam.delta);
        norms[j][0] = spectral_norm(power);
        for (int n = fam.delta + 1; n <= fam.Delta; ++n) {
            power = mat_mul(power, fam.matrices[part.stable[j]]);
            norms[j][n - fam.delta] = spectral_norm(power);
        }
    }

    for (int m = fam.delta; m <= fam.Delta; ++m) {
        double worst = 0.0;
        for (const auto& row : norms)
            for (int n = m; n <= fam.Delta; ++n) worst = std::max(worst, row[n - fam.delta]);
        if (worst < 1.0) return MRho{m, worst};
    }
    std::ostringstream os;
    os << "no dwell length in [" << fam.delta << ", " << fam.Delta
       << "] makes every stable subsystem power contractive";
    throw AssumptionError(os.str());
}

PqTable zeta_table(double M, int N, int m, int delta, int Delta) {
    if (!(M > 0.0)) throw std::invalid_argument("zeta_table requires M > 0");
    if (N < 1 || m < 1 || delta < 1 || Delta < 1)
        throw std::invalid_argument("zeta_table requires positive integer arguments");

    const int K1 = m / delta;
    const int K2 = Delta / delta;
    const int base = (N - 1) * (m + Delta - 1);
    const int e_dd = base + m + Delta - 2 * delta;
    const int e_mixed = base + m + Delta - delta - 1;
    const int e_11 = base + m + Delta - 2;

    auto term = [&](double prefactor, int exponent) {
        if (prefactor == 0.0) return 0.0;
        const double value = prefactor * std::pow(M, exponent);
        if (!std::isfinite(value)) {
            std::ostringstream os;
            os << "zeta overflow: M^" << exponent << " is not finite (M = " << M << ")";
            throw std::overflow_error(os.str());
        }
        return value;
    };

    PqTable z;
    z.delta_delta = term(static_cast<double>(K1) * K2, e_dd);
    z.one_delta = term(static_cast<double>(K1) * (Delta - K2 * delta), e_mixed);
    z.delta_one = term(static_cast<double>(m - K1 * delta) * K2, e_mixed);
    z.one_one = term(static_cast<double>(m - K1 * delta) * (Delta - K2 * delta), e_11);
    return z;
}

PqTable eps_table(const SwitchedFamily& fam, const IndexPartition& part) {
    PqTable eps;  // all-zero when no unstable subsystem: conditions are vacuous
    if (part.unstable.empty() || part.stable.empty()) return eps;

    auto worst = [&](int p, int q) {
        double value = 0.0;
        for (int i : part.unstable)
            for (int j : part.stable)
                value = std::max(value,
                                 spectral_norm(commutator(fam.matrices[i], p, fam.matrices[j], q)));
        return value;
    };
    eps.delta_delta = worst(fam.delta, fam.delta);
    eps.one_delta = worst(1, fam.delta);
    eps.delta_one = worst(fam.delta, 1);
    eps.one_one = worst(1, 1);
    return eps;
}

DerivedParams derive_params(const SwitchedFamily& fam, const IndexPartition& part) {
    DerivedParams dp;
    for (const auto& m : fam.matrices) dp.M = std::max(dp.M, spectral_norm(m));
    const MRho mr = find_m_rho(fam, part);
    dp.m = mr.m;
    dp.rho = mr.rho;
    dp.K1 = dp.m / fam.delta;
    dp.K2 = fam.Delta / fam.delta;
    dp.zeta = zeta_table(dp.M, fam.count(), dp.m, fam.delta, fam.Delta);
    dp.eps = eps_table(fam, part);
    return dp;
}

}  // namespace swcert
