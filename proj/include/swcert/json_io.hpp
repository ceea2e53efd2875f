#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "swcert/certificate.hpp"
#include "swcert/simulate.hpp"

namespace swcert {

using ordered_json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input document for the CLI. `matrices` are row-major d x d arrays,
/// 1-based subsystem order. Unknown fields are rejected.
struct Config {
    std::vector<std::vector<std::vector<double>>> matrices;
    int delta = 1;
    int Delta = 2;
    std::optional<double> lambda;
    std::uint64_t seed = 0;
    int horizon = 200;
    int num_signals = 1000;
    double x0_box = 100.0;

    SwitchedFamily to_family() const;
};

Config parse_config(const std::string& text);
Config load_config(const std::filesystem::path& path);

ordered_json certificate_to_json(const Certificate& cert);
ordered_json signal_to_json(const SwitchingSignal& sig);  // 1-based [index, dwell] pairs
SwitchingSignal signal_from_json(const ordered_json& j);
ordered_json summary_to_json(const MonteCarloSummary& mc);
ordered_json oracle_to_json(const OracleReport& report);

/// Full-precision decimal rendering (17 significant digits), stable across
/// runs so emitted files can be compared byte for byte.
std::string format_double(double v);

/// CSV with header `t,norm_x,log_norm_x`, LF line endings, one row per time
/// step starting at t = 0.
std::string trajectory_csv(std::span<const double> norms);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace swcert
