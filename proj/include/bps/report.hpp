#pragma once

// CSV/JSON emission for count and expsum reports, and the batch experiment
// configuration (a JSON job list) with round-trip serialization.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "bps/counting.hpp"

namespace bps {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct CountRowContext {
    std::vector<std::string> alphas, betas; // canonical surd syntax
    std::string c;                          // empty when no PS spec
    std::uint64_t x = 0;
};

inline std::string count_csv_header() {
    return "x,xi,alphas,betas,c,observed,predicted,predicted_li,rel_err,method,ms";
}

inline std::string join(const std::vector<std::string>& parts, char sep = '|') {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

inline std::string count_csv_row(const CountRowContext& ctx, const CountReport& rep) {
    std::string row;
    row += std::to_string(ctx.x);
    row += ',' + std::to_string(ctx.alphas.size());
    row += ',' + join(ctx.alphas);
    row += ',' + join(ctx.betas);
    row += ',' + ctx.c;
    row += ',' + std::to_string(rep.observed);
    row += ',' + format_double(rep.predicted);
    row += ',' + format_double(rep.predicted_li);
    row += ',' + format_double(rep.relative_error);
    row += ',';
    row += method_name(rep.method);
    row += ',' + std::to_string(rep.runtime_ms);
    return row;
}

inline nlohmann::json count_json(const CountRowContext& ctx, const CountReport& rep) {
    nlohmann::json j;
    j["x"] = ctx.x;
    j["xi"] = ctx.alphas.size();
    j["alphas"] = ctx.alphas;
    j["betas"] = ctx.betas;
    j["c"] = ctx.c;
    j["observed"] = rep.observed;
    j["predicted"] = rep.predicted;
    j["predicted_li"] = rep.predicted_li;
    j["rel_err"] = rep.relative_error;
    j["method"] = method_name(rep.method);
    j["ms"] = rep.runtime_ms;
    return j;
}

inline std::string ratio_csv_header() { return "lemma,params,direct_value,envelope,ratio"; }

inline std::string ratio_csv_row(const std::string& lemma, const std::string& params,
                                 double direct, double envelope, double ratio) {
    return lemma + ',' + params + ',' + format_double(direct) + ',' + format_double(envelope) +
           ',' + format_double(ratio);
}

// Batch job list. Jobs stay as JSON objects (one per subcommand invocation);
// parse -> serialize is the identity on the canonical form.
struct ExperimentConfig {
    nlohmann::json jobs = nlohmann::json::array();
    std::string output;         // empty: stdout
    std::string format = "csv"; // csv | json
    int threads = 0;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["jobs"] = jobs;
        j["output"] = output;
        j["format"] = format;
        j["threads"] = threads;
        j["seed"] = seed;
        return j;
    }

    static ExperimentConfig from_json(const nlohmann::json& j) {
        ExperimentConfig cfg;
        cfg.jobs = j.value("jobs", nlohmann::json::array());
        if (!cfg.jobs.is_array()) throw std::invalid_argument("config: jobs must be an array");
        cfg.output = j.value("output", std::string());
        cfg.format = j.value("format", std::string("csv"));
        cfg.threads = j.value("threads", 0);
        cfg.seed = j.value("seed", std::uint64_t{0});
        if (cfg.format != "csv" && cfg.format != "json")
            throw std::invalid_argument("config: format must be csv or json");
        return cfg;
    }

    std::string serialize() const { return to_json().dump(2); }

    static ExperimentConfig parse(const std::string& text) {
        return from_json(nlohmann::json::parse(text));
    }
};

} // namespace bps
