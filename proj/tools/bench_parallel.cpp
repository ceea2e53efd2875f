// Wall-clock comparison of the serial and OpenMP paths for the two
// data-parallel kernels (Monte-Carlo batches and the product-tree oracle
// scan), with a bitwise equality check between the two paths.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "swcert/certificate.hpp"
#include "swcert/simulate.hpp"

using namespace swcert;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

SwitchedFamily bench_family() {
    // Three subsystems: two rotated contractions and one mild expansion.
    return SwitchedFamily(
        {Matrix::from_rows({{0.54, -0.42, 0.00}, {0.42, 0.54, 0.00}, {0.00, 0.00, 0.30}}),
         Matrix::from_rows({{0.25, 0.00, 0.35}, {0.00, 0.40, 0.00}, {-0.35, 0.00, 0.25}}),
         Matrix::from_rows({{1.02, 0.00, 0.00}, {0.00, 0.98, 0.01}, {0.00, 0.00, 0.97}})},
        2, 4);
}

bool same_summary(const MonteCarloSummary& a, const MonteCarloSummary& b) {
    if (a.divergent_runs != b.divergent_runs || a.runs.size() != b.runs.size()) return false;
    if (std::memcmp(&a.rate_mean, &b.rate_mean, sizeof(double)) != 0) return false;
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        if (std::memcmp(&a.runs[i].max_ratio, &b.runs[i].max_ratio, sizeof(double)) != 0 ||
            std::memcmp(&a.runs[i].rate, &b.runs[i].rate, sizeof(double)) != 0)
            return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    const int num_runs = quick ? 200 : 4000;
    const int horizon = quick ? 200 : 800;
    const int oracle_len = quick ? 14 : 19;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both paths are serial\n");
#endif

    const SwitchedFamily fam = bench_family();
    const IndexPartition part = classify(fam);
    const DerivedParams dp = derive_params(fam, part);

    auto t0 = clock_type::now();
    const MonteCarloSummary serial =
        monte_carlo(fam, part, dp, num_runs, horizon, 100.0, 7, /*parallel=*/false);
    const double mc_serial = seconds_since(t0);

    t0 = clock_type::now();
    const MonteCarloSummary parallel =
        monte_carlo(fam, part, dp, num_runs, horizon, 100.0, 7, /*parallel=*/true);
    const double mc_parallel = seconds_since(t0);

    std::printf("monte_carlo  %5d runs x %4d steps:  serial %8.3fs   parallel %8.3fs   "
                "speedup %.2fx   results %s\n",
                num_runs, horizon, mc_serial, mc_parallel, mc_serial / mc_parallel,
                same_summary(serial, parallel) ? "identical" : "DIFFER");

    const Certificate cert = certify(fam, 1e-4);
    if (!cert.certified()) {
        std::printf("bench family could not be certified; oracle benchmark skipped\n");
        return 1;
    }

    t0 = clock_type::now();
    const OracleReport r_serial = oracle_check(fam, part, dp, cert, oracle_len, false);
    const double or_serial = seconds_since(t0);

    t0 = clock_type::now();
    const OracleReport r_parallel = oracle_check(fam, part, dp, cert, oracle_len, true);
    const double or_parallel = seconds_since(t0);

    const bool same = r_serial.products_checked == r_parallel.products_checked &&
                      r_serial.violation_count == r_parallel.violation_count &&
                      std::memcmp(&r_serial.worst_excess, &r_parallel.worst_excess,
                                  sizeof(double)) == 0;
    std::printf("oracle_check %9lld products (len %d): serial %8.3fs   parallel %8.3fs   "
                "speedup %.2fx   results %s\n",
                r_serial.products_checked, oracle_len, or_serial, or_parallel,
                or_serial / or_parallel, same ? "identical" : "DIFFER");
    return same && same_summary(serial, parallel) ? 0 : 1;
}
