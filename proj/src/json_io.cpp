#include "swcert/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace swcert {

SwitchedFamily Config::to_family() const {
    std::vector<Matrix> mats;
    mats.reserve(matrices.size());
    for (const auto& rows : matrices) mats.push_back(Matrix::from_rows(rows));
    return SwitchedFamily(std::move(mats), delta, Delta);
}

namespace {

const std::set<std::string> kKnownFields = {
    "matrices", "delta", "Delta", "lambda", "seed", "horizon", "num_signals", "x0_box",
};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config error: " + msg); }

}  // namespace

Config parse_config(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("top-level value must be an object");
    for (const auto& item : j.items())
        if (!kKnownFields.count(item.key())) fail("unknown field '" + item.key() + "'");

    Config cfg;
    if (!j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].empty())
        fail("'matrices' must be a nonempty array of square row-major matrices");
    try {
        cfg.matrices = j["matrices"].get<std::vector<std::vector<std::vector<double>>>>();
    } catch (const std::exception&) {
        fail("'matrices' must be an array of d x d numeric arrays");
    }
    if (!j.contains("delta") || !j["delta"].is_number_integer()) fail("'delta' must be an integer");
    if (!j.contains("Delta") || !j["Delta"].is_number_integer()) fail("'Delta' must be an integer");
    cfg.delta = j["delta"].get<int>();
    cfg.Delta = j["Delta"].get<int>();
    if (j.contains("lambda")) {
        if (!j["lambda"].is_number()) fail("'lambda' must be a number");
        cfg.lambda = j["lambda"].get<double>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) fail("'seed' must be an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("horizon")) {
        if (!j["horizon"].is_number_integer() || j["horizon"].get<int>() < 1)
            fail("'horizon' must be a positive integer");
        cfg.horizon = j["horizon"].get<int>();
    }
    if (j.contains("num_signals")) {
        if (!j["num_signals"].is_number_integer() || j["num_signals"].get<int>() < 0)
            fail("'num_signals' must be a nonnegative integer");
        cfg.num_signals = j["num_signals"].get<int>();
    }
    if (j.contains("x0_box")) {
        if (!j["x0_box"].is_number() || !(j["x0_box"].get<double>() > 0))
            fail("'x0_box' must be a positive number");
        cfg.x0_box = j["x0_box"].get<double>();
    }

    try {
        (void)cfg.to_family();  // surface family invariant violations as config errors
    } catch (const std::exception& e) {
        fail(e.what());
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config error: cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

ordered_json certificate_to_json(const Certificate& cert) {
    ordered_json j;
    j["verdict"] = to_string(cert.verdict);
    j["certified"] = cert.certified();
    j["lambda"] = cert.lambda;
    j["c"] = cert.c;
    j["lhs"] = cert.lhs_value;
    j["N"] = cert.N;
    j["dim"] = cert.dim;
    j["delta"] = cert.delta;
    j["Delta"] = cert.Delta;
    j["params"] = {
        {"M", cert.params.M},
        {"m", cert.params.m},
        {"rho", cert.params.rho},
        {"K1", cert.params.K1},
        {"K2", cert.params.K2},
        {"zeta",
         {{"delta_delta", cert.params.zeta.delta_delta},
          {"one_delta", cert.params.zeta.one_delta},
          {"delta_one", cert.params.zeta.delta_one},
          {"one_one", cert.params.zeta.one_one}}},
        {"eps",
         {{"delta_delta", cert.params.eps.delta_delta},
          {"one_delta", cert.params.eps.one_delta},
          {"delta_one", cert.params.eps.delta_one},
          {"one_one", cert.params.eps.one_one}}},
    };
    ordered_json audit = ordered_json::array();
    for (const auto& [label, value] : cert.audit) audit.push_back({label, value});
    j["audit"] = audit;
    return j;
}

ordered_json signal_to_json(const SwitchingSignal& sig) {
    ordered_json j = ordered_json::array();
    for (const auto& seg : sig.segments) j.push_back({seg.index + 1, seg.dwell});
    return j;
}

SwitchingSignal signal_from_json(const ordered_json& j) {
    if (!j.is_array()) throw ConfigError("signal must be an array of [index, dwell] pairs");
    SwitchingSignal sig;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer())
            throw ConfigError("signal must be an array of [index, dwell] pairs");
        sig.segments.push_back({pair[0].get<int>() - 1, pair[1].get<int>()});
    }
    return sig;
}

ordered_json summary_to_json(const MonteCarloSummary& mc) {
    ordered_json j;
    j["num_runs"] = mc.num_runs;
    j["horizon"] = mc.horizon;
    j["seed"] = mc.seed;
    j["x0_box"] = mc.x0_box;
    j["divergence_threshold"] = mc.divergence_threshold;
    j["divergent_runs"] = mc.divergent_runs;
    j["rate_min"] = mc.rate_min;
    j["rate_max"] = mc.rate_max;
    j["rate_mean"] = mc.rate_mean;
    j["max_ratio"] = mc.max_ratio;
    ordered_json runs = ordered_json::array();
    for (const auto& r : mc.runs)
        runs.push_back({{"run", r.run},
                        {"max_ratio", r.max_ratio},
                        {"rate", r.rate},
                        {"r2", r.r2},
                        {"divergent", r.divergent}});
    j["runs"] = runs;
    return j;
}

ordered_json oracle_to_json(const OracleReport& report) {
    ordered_json j;
    j["max_len"] = report.max_len;
    j["products_checked"] = report.products_checked;
    j["violation_count"] = report.violation_count;
    j["sound"] = report.sound();
    j["worst_excess"] = report.worst_excess;
    j["worst_length"] = report.worst_length;
    j["worst_norm"] = report.worst_norm;
    j["worst_bound"] = report.worst_bound;
    j["worst_signal"] = signal_to_json(report.worst_signal);
    ordered_json viols = ordered_json::array();
    for (const auto& v : report.first_violations)
        viols.push_back({{"signal", signal_to_json(v.signal)},
                         {"length", v.length},
                         {"norm", v.norm},
                         {"bound", v.bound}});
    j["violations"] = viols;
    return j;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(std::span<const double> norms) {
    std::string out = "t,norm_x,log_norm_x\n";
    for (std::size_t t = 0; t < norms.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_double(norms[t]);
        out += ',';
        out += format_double(std::log(norms[t]));
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw IoError("failed to write '" + path.string() + "'");
}

}  // namespace swcert
