#include "multdep/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace multdep {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw config_error("config: " + message); }

void require_keys(const ordered_json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail("unknown key \"" + it.key() + "\" in " + where);
}

std::uint64_t read_u64(const ordered_json& v, const std::string& name) {
    if (!v.is_number_integer() || v.is_number_float()) fail(name + " must be an integer");
    if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
        fail(name + " must be nonnegative");
    return v.get<std::uint64_t>();
}

Integer read_integer(const ordered_json& v, const std::string& name) {
    if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
    if (v.is_string()) {
        try {
            return Integer(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            fail(name + " is not an integer string");
        }
    }
    fail(name + " must be an integer or an integer string");
}

}  // namespace

PolySystem ExperimentConfig::system() const {
    std::vector<MPoly> components;
    components.reserve(polynomial_sources.size());
    for (const std::string& src : polynomial_sources) {
        try {
            components.push_back(parse_poly(src, m));
        } catch (const poly_parse_error& e) {
            fail("polynomial \"" + src + "\": " + e.what());
        }
    }
    return make_system(std::move(components));
}

CountOptions ExperimentConfig::count_options() const {
    CountOptions opts;
    opts.budget = budget;
    opts.threads = threads;
    opts.search_bound = search_bound;
    return opts;
}

ExperimentConfig parse_config_text(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const ordered_json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("top level must be an object");
    require_keys(doc, "config",
                 {"polynomials", "n", "m", "heights", "budget", "search_bound", "threads",
                  "target", "target_exponent", "assertions", "output"});

    ExperimentConfig cfg;

    if (!doc.contains("polynomials") || !doc["polynomials"].is_array() ||
        doc["polynomials"].empty())
        fail("\"polynomials\" must be a nonempty array of strings");
    for (const auto& p : doc["polynomials"]) {
        if (!p.is_string()) fail("\"polynomials\" entries must be strings");
        cfg.polynomial_sources.push_back(p.get<std::string>());
    }
    if (doc.contains("n") && read_u64(doc["n"], "n") != cfg.polynomial_sources.size())
        fail("\"n\" disagrees with the number of polynomials");

    if (!doc.contains("m")) fail("\"m\" (variables per point) is required");
    std::uint64_t m = read_u64(doc["m"], "m");
    if (m < 1 || m > 8) fail("\"m\" must be between 1 and 8");
    cfg.m = static_cast<unsigned>(m);

    if (!doc.contains("heights") || !doc["heights"].is_array() || doc["heights"].empty())
        fail("\"heights\" must be a nonempty array");
    for (const auto& h : doc["heights"]) cfg.heights.push_back(read_u64(h, "heights entry"));

    if (doc.contains("budget")) {
        cfg.budget = read_u64(doc["budget"], "budget");
        if (cfg.budget == 0) fail("\"budget\" must be positive");
    }
    if (doc.contains("search_bound")) {
        std::uint64_t b = read_u64(doc["search_bound"], "search_bound");
        if (b < 1 || b > 1000) fail("\"search_bound\" must be between 1 and 1000");
        cfg.search_bound = static_cast<long>(b);
    }
    if (doc.contains("threads")) {
        std::uint64_t t = read_u64(doc["threads"], "threads");
        if (t < 1 || t > 256) fail("\"threads\" must be between 1 and 256");
        cfg.threads = static_cast<unsigned>(t);
    }
    if (doc.contains("target")) cfg.target = read_integer(doc["target"], "target");
    if (doc.contains("target_exponent")) {
        if (!doc["target_exponent"].is_number()) fail("\"target_exponent\" must be a number");
        cfg.target_exponent = doc["target_exponent"].get<double>();
    }
    if (doc.contains("assertions")) {
        const auto& a = doc["assertions"];
        if (!a.is_object()) fail("\"assertions\" must be an object");
        require_keys(a, "assertions", {"ncc", "irreducible"});
        if (a.contains("ncc")) {
            if (!a["ncc"].is_boolean()) fail("\"ncc\" must be a boolean");
            cfg.assertions.ncc = a["ncc"].get<bool>();
        }
        if (a.contains("irreducible")) {
            if (!a["irreducible"].is_boolean()) fail("\"irreducible\" must be a boolean");
            cfg.assertions.irreducible = a["irreducible"].get<bool>();
        }
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        if (!o.is_object()) fail("\"output\" must be an object");
        require_keys(o, "output", {"json", "csv"});
        if (o.contains("json")) {
            if (!o["json"].is_string()) fail("output \"json\" must be a path string");
            cfg.output.json = o["json"].get<std::string>();
        }
        if (o.contains("csv")) {
            if (!o["csv"].is_string()) fail("output \"csv\" must be a path string");
            cfg.output.csv = o["csv"].get<std::string>();
        }
    }

    cfg.system();  // validate the grammar and variable count up front
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace multdep
