#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "multdep/config.hpp"
#include "multdep/counting.hpp"
#include "multdep/heights.hpp"
#include "multdep/version.hpp"

using nlohmann::ordered_json;
using namespace multdep;

namespace {

// Cross-check failures inside the tool itself; mapped to exit code 4.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

Rational parse_rational(const std::string& text) {
    auto bad = [&]() -> void {
        throw std::invalid_argument("not a rational: \"" + text + "\" (write p or p/q in base 10)");
    };
    std::size_t slash = text.find('/');
    std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto is_int = [](const std::string& s, bool sign_ok) {
        std::size_t i = (sign_ok && !s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!is_int(num, true) || !is_int(den, false)) bad();
    Integer p(num), q(den);
    if (q == 0) bad();
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Integer parse_integer(const std::string& text) {
    Rational r = parse_rational(text);
    if (r.get_den() != 1) throw std::invalid_argument("expected an integer, got \"" + text + "\"");
    return r.get_num();
}

std::string fmt_rational(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Small relation entries print as JSON numbers; anything that cannot be
// represented exactly falls back to decimal strings for the whole array.
ordered_json int_array(const std::vector<Integer>& v) {
    bool fits = true;
    for (const Integer& x : v)
        if (!x.fits_slong_p()) fits = false;
    ordered_json arr = ordered_json::array();
    for (const Integer& x : v) {
        if (fits)
            arr.push_back(static_cast<std::int64_t>(x.get_si()));
        else
            arr.push_back(x.get_str());
    }
    return arr;
}

ordered_json string_array(const std::vector<Integer>& v) {
    ordered_json arr = ordered_json::array();
    for (const Integer& x : v) arr.push_back(x.get_str());
    return arr;
}

// Collects the result payload plus bookkeeping and emits JSON (stdout and
// optionally a file) and CSV (optionally) with the embedded manifest.
struct Emitter {
    std::string command;
    ordered_json parameters = ordered_json::object();
    std::string out_path;
    std::string csv_path;
    Integer budget_used = 0;
    std::vector<std::string> csv_lines;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void finish(const ordered_json& payload) {
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        ordered_json manifest;
        manifest["schema_version"] = kManifestSchemaVersion;
        manifest["command"] = command;
        manifest["parameters"] = parameters;
        manifest["library_version"] = kLibraryVersion;
        manifest["wall_time_seconds"] = wall;
        manifest["budget_used"] = budget_used.get_str();

        ordered_json root;
        root["manifest"] = manifest;
        for (const auto& item : payload.items()) root[item.key()] = item.value();
        std::string text = root.dump(2) + "\n";
        std::cout << text;
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw std::invalid_argument("cannot write \"" + out_path + "\"");
            f << text;
        }
        if (!csv_path.empty() && !csv_lines.empty()) {
            std::ofstream f(csv_path);
            if (!f) throw std::invalid_argument("cannot write \"" + csv_path + "\"");
            for (const std::string& line : csv_lines) f << line << "\n";
        }
    }
};

ordered_json echo_config(const std::string& path, const ExperimentConfig& cfg) {
    ordered_json p;
    p["config"] = path;
    p["polynomials"] = cfg.polynomial_sources;
    p["n"] = cfg.polynomial_sources.size();
    p["m"] = cfg.m;
    p["heights"] = cfg.heights;
    p["budget"] = cfg.budget;
    p["search_bound"] = cfg.search_bound;
    p["threads"] = cfg.threads;
    if (cfg.target) p["target"] = cfg.target->get_str();
    if (cfg.target_exponent) p["target_exponent"] = *cfg.target_exponent;
    p["assertions"] = {{"ncc", cfg.assertions.ncc}, {"irreducible", cfg.assertions.irreducible}};
    return p;
}

ordered_json fit_to_json(const ScalingReport& fit) {
    ordered_json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["target_exponent"] = fit.target_exponent;
    j["slope_minus_target"] = fit.slope_minus_target;
    ordered_json used = ordered_json::array();
    for (const auto& [H, c] : fit.used) used.push_back({{"H", H}, {"count", c}});
    j["used"] = used;
    j["residuals"] = fit.residuals;
    return j;
}

struct DepsArgs {
    std::vector<std::string> values;
    long search_bound = 20;
};

int run_deps(const DepsArgs& args, Emitter& em, bool rank_only) {
    std::vector<Rational> nu;
    for (const std::string& s : args.values) {
        Rational r = parse_rational(s);
        if (r == 0) throw std::invalid_argument("values must be nonzero, got \"" + s + "\"");
        nu.push_back(r);
    }
    em.parameters["values"] = args.values;
    em.parameters["search_bound"] = args.search_bound;

    RankResult rank = mult_rank(nu);
    ordered_json payload;
    ordered_json formatted = ordered_json::array();
    for (const Rational& r : nu) formatted.push_back(fmt_rational(r));
    payload["values"] = formatted;
    if (!rank_only) {
        bool dependent = is_mult_dependent(nu);
        if (dependent != (rank.rank < nu.size()))
            throw internal_error("dependence test disagrees with rank");
        payload["dependent"] = dependent;
        auto relation = find_relation(nu, args.search_bound);
        payload["relation"] = relation ? int_array(relation->k) : ordered_json(nullptr);
    }
    payload["rank"] = rank.rank;
    payload["witness"] = rank.witness ? ordered_json(*rank.witness) : ordered_json(nullptr);
    if (!rank_only) payload["search_bound"] = args.search_bound;
    em.finish(payload);
    return 0;
}

struct ConfigArgs {
    std::string path;
    std::optional<std::uint64_t> budget;
    std::optional<unsigned> threads;
    std::optional<long> search_bound;
};

ExperimentConfig resolve_config(const ConfigArgs& args, Emitter& em) {
    ExperimentConfig cfg = load_config(args.path);
    if (args.budget) cfg.budget = *args.budget;
    if (args.threads) cfg.threads = *args.threads;
    if (args.search_bound) cfg.search_bound = *args.search_bound;
    if (em.out_path.empty()) em.out_path = cfg.output.json;
    if (em.csv_path.empty()) em.csv_path = cfg.output.csv;
    em.parameters = echo_config(args.path, cfg);
    return cfg;
}

int run_count(const ConfigArgs& args, Emitter& em) {
    ExperimentConfig cfg = resolve_config(args, em);
    PolySystem F = cfg.system();
    CountOptions opts = cfg.count_options();
    const unsigned n = static_cast<unsigned>(F.size());

    std::string header = "H,N_F,N_F_star,star_zero_coordinate,independent,zero_coordinate,total";
    for (unsigned s = 0; s < n; ++s) header += ",rank_" + std::to_string(s);
    em.csv_lines.push_back(header);

    ordered_json results = ordered_json::array();
    for (std::uint64_t H : cfg.heights) {
        std::uint64_t direct = count_NF(F, H, opts);
        RankDecomposition dec = count_NF_by_rank(F, H, opts);
        CountOptions star_opts = opts;
        star_opts.collect_witnesses = false;
        StarCount star = count_NF_star(F, H, star_opts);

        // the two counting paths are independent; agreement is the point
        if (dec.dependent_total() != direct)
            throw internal_error("rank decomposition total disagrees with direct count");
        if (dec.dependent_total() + dec.independent_count + dec.zero_coordinate_count !=
            dec.total_tuples)
            throw internal_error("rank decomposition does not partition the box");

        ordered_json row;
        row["H"] = H;
        row["N_F"] = direct;
        row["by_rank"] = {{"counts", dec.counts},
                          {"independent", dec.independent_count},
                          {"zero_coordinate", dec.zero_coordinate_count},
                          {"total", dec.total_tuples}};
        row["N_F_star"] = {{"count", star.count},
                           {"zero_coordinate", star.zero_coordinate_count}};
        results.push_back(row);

        std::string line = std::to_string(H) + "," + std::to_string(direct) + "," +
                           std::to_string(star.count) + "," +
                           std::to_string(star.zero_coordinate_count) + "," +
                           std::to_string(dec.independent_count) + "," +
                           std::to_string(dec.zero_coordinate_count) + "," +
                           std::to_string(dec.total_tuples);
        for (std::uint64_t c : dec.counts) line += "," + std::to_string(c);
        em.csv_lines.push_back(line);

        Box tuple_box{cfg.m * n, H};
        em.budget_used += 2 * tuple_box.point_count() + Box{cfg.m, H}.point_count();
    }

    ordered_json payload;
    payload["system"] = {{"polynomials", em.parameters["polynomials"]},
                         {"n", n},
                         {"m", cfg.m},
                         {"assertions", em.parameters["assertions"]}};
    payload["results"] = results;
    em.finish(payload);
    return 0;
}

int run_gcdset(const ConfigArgs& args, Emitter& em) {
    ExperimentConfig cfg = resolve_config(args, em);
    PolySystem F = cfg.system();
    CountOptions opts = cfg.count_options();
    constexpr std::size_t kMaxListedValues = 10000;

    em.csv_lines.push_back("H,distinct_gcds,max_gcd,all_zero_points,unit_value_points,pairwise_coprime");
    ordered_json results = ordered_json::array();
    for (std::uint64_t H : cfg.heights) {
        GcdValueReport rep = gcd_value_set(F, H, opts);
        ordered_json row;
        row["H"] = H;
        row["distinct_gcds"] = rep.values.size();
        if (rep.values.size() <= kMaxListedValues)
            row["values"] = string_array(rep.values);
        else
            row["values_omitted"] = true;
        row["max_gcd"] = rep.values.empty() ? ordered_json(nullptr)
                                            : ordered_json(rep.values.back().get_str());
        row["all_zero_points"] = rep.all_zero_points;
        row["unit_value_points"] = rep.unit_value_points;
        row["pairwise_coprime"] =
            rep.pairwise_coprime ? ordered_json(*rep.pairwise_coprime) : ordered_json(nullptr);
        results.push_back(row);

        std::string coprime = rep.pairwise_coprime ? (*rep.pairwise_coprime ? "true" : "false")
                                                   : "na";
        em.csv_lines.push_back(std::to_string(H) + "," + std::to_string(rep.values.size()) + "," +
                               (rep.values.empty() ? "" : rep.values.back().get_str()) + "," +
                               std::to_string(rep.all_zero_points) + "," +
                               std::to_string(rep.unit_value_points) + "," + coprime);
        em.budget_used += Box{cfg.m, H}.point_count();
    }
    ordered_json payload;
    payload["results"] = results;
    em.finish(payload);
    return 0;
}

struct PolyArgs {
    std::string source;
    std::uint64_t H = 0;
    unsigned m = 1;
    std::uint64_t budget = 100'000'000;
};

int run_pplus(const PolyArgs& args, Emitter& em) {
    MPoly f = parse_poly(args.source, args.m);
    em.parameters["f"] = args.source;
    em.parameters["m"] = args.m;
    em.parameters["H"] = args.H;
    em.parameters["budget"] = args.budget;
    CountOptions opts;
    opts.budget = args.budget;

    std::vector<ShellStat> shells = pplus_profile(f, args.H, opts);
    em.csv_lines.push_back("radius,min_largest_prime,skipped");
    ordered_json rows = ordered_json::array();
    for (const ShellStat& s : shells) {
        ordered_json row;
        row["radius"] = s.radius;
        row["min_largest_prime"] = s.min_largest_prime
                                       ? ordered_json(s.min_largest_prime->get_str())
                                       : ordered_json(nullptr);
        row["skipped"] = s.skipped;
        rows.push_back(row);
        em.csv_lines.push_back(std::to_string(s.radius) + "," +
                               (s.min_largest_prime ? s.min_largest_prime->get_str() : "") + "," +
                               std::to_string(s.skipped));
    }
    em.budget_used += Box{args.m, args.H}.point_count();
    ordered_json payload;
    payload["f"] = f.to_string();
    payload["shells"] = rows;
    em.finish(payload);
    return 0;
}

int run_hypersurface(const ConfigArgs& args, Emitter& em) {
    ExperimentConfig cfg = resolve_config(args, em);
    PolySystem F = cfg.system();
    if (F.size() != 1)
        throw config_error("config: hypersurface counting expects exactly one polynomial");
    const MPoly& f = F.components[0];
    Integer target = cfg.target.value_or(Integer(0));
    CountOptions opts = cfg.count_options();

    em.csv_lines.push_back("H,count");
    ordered_json results = ordered_json::array();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
    for (std::uint64_t H : cfg.heights) {
        std::uint64_t c = hypersurface_count(f, target, H, opts);
        results.push_back({{"H", H}, {"count", c}});
        points.emplace_back(H, c);
        em.csv_lines.push_back(std::to_string(H) + "," + std::to_string(c));
        em.budget_used += Box{cfg.m, H}.point_count();
    }

    double target_exp = cfg.target_exponent.value_or(static_cast<double>(cfg.m) - 1.0);
    ordered_json payload;
    payload["f"] = f.to_string();
    payload["m"] = cfg.m;
    payload["target"] = target.get_str();
    payload["target_exponent_source"] = cfg.target_exponent ? "config" : "ambient dimension m - 1";
    payload["results"] = results;
    try {
        payload["fit"] = fit_to_json(scaling_fit(points, target_exp));
    } catch (const std::invalid_argument& e) {
        payload["fit"] = nullptr;
        payload["fit_note"] = e.what();
    }
    em.finish(payload);
    return 0;
}

int run_scaling(const ConfigArgs& args, Emitter& em) {
    ExperimentConfig cfg = resolve_config(args, em);
    PolySystem F = cfg.system();
    CountOptions opts = cfg.count_options();
    const unsigned n = static_cast<unsigned>(F.size());

    unsigned d = 0;
    for (const MPoly& f : F.components)
        d = std::max(d, static_cast<unsigned>(std::max<long>(0, f.total_degree())));

    double target_exp;
    std::string source;
    if (cfg.target_exponent) {
        target_exp = *cfg.target_exponent;
        source = "config";
    } else {
        double mn = static_cast<double>(cfg.m) * n;
        try {
            target_exp = mn - v_md(cfg.m, d);
            source = "mn - v(m,d)";
        } catch (const std::domain_error&) {
            target_exp = mn - 1.0;  // saving exponent undefined here
            source = "mn - 1";
        }
    }

    em.csv_lines.push_back("H,N_F");
    ordered_json results = ordered_json::array();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
    for (std::uint64_t H : cfg.heights) {
        std::uint64_t c = count_NF(F, H, opts);
        results.push_back({{"H", H}, {"count", c}});
        points.emplace_back(H, c);
        em.csv_lines.push_back(std::to_string(H) + "," + std::to_string(c));
        em.budget_used += Box{cfg.m * n, H}.point_count();
    }

    ordered_json payload;
    payload["degree"] = d;
    payload["target_exponent_source"] = source;
    payload["results"] = results;
    try {
        payload["fit"] = fit_to_json(scaling_fit(points, target_exp));
    } catch (const std::invalid_argument& e) {
        payload["fit"] = nullptr;
        payload["fit_note"] = e.what();
    }
    em.finish(payload);
    return 0;
}

struct PsiArgs {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
};

int run_psi(const PsiArgs& args, Emitter& em) {
    em.parameters["x"] = args.x;
    em.parameters["y"] = args.y;
    std::uint64_t value = psi_exact(args.x, args.y);
    ordered_json payload;
    payload["x"] = args.x;
    payload["y"] = args.y;
    payload["psi"] = value;
    payload["log_psi"] = std::log(static_cast<double>(value));
    try {
        BruijnZ z = bruijn_Z(static_cast<double>(args.x), static_cast<double>(args.y));
        payload["bruijn_Z"] = z.Z;  // approximates log_psi
        payload["u"] = z.u;
    } catch (const std::domain_error&) {
        payload["bruijn_Z"] = nullptr;
    }
    em.finish(payload);
    return 0;
}

struct HeightsArgs {
    std::string source;
    std::uint64_t H = 1;
    std::vector<std::string> points;
    unsigned m = 1;
    std::uint64_t budget = 100'000'000;
};

int run_heights(const HeightsArgs& args, Emitter& em) {
    if (args.H < 1) throw std::invalid_argument("H must be at least 1");
    MPoly f = parse_poly(args.source, args.m);
    em.parameters["f"] = args.source;
    em.parameters["m"] = args.m;
    em.parameters["H"] = args.H;
    em.parameters["points"] = args.points;
    em.parameters["budget"] = args.budget;

    Integer bound = height_growth_bound(f, Integer(args.H));
    ordered_json payload;
    payload["f"] = f.to_string();
    payload["m"] = args.m;
    payload["H"] = args.H;
    payload["growth_constant"] = args.H >= 2
                                     ? ordered_json(height_growth_constant(
                                           f, static_cast<double>(args.H)))
                                     : ordered_json(nullptr);
    payload["height_bound"] = bound.get_str();

    if (!args.points.empty()) {
        if (args.points.size() % args.m != 0)
            throw std::invalid_argument("points must come in groups of m integers");
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < args.points.size(); i += args.m) {
            std::vector<Integer> u(args.m);
            for (unsigned j = 0; j < args.m; ++j) {
                u[j] = parse_integer(args.points[i + j]);
                Integer au = abs(u[j]);
                if (au > Integer(args.H))
                    throw std::invalid_argument("point coordinate outside [-H,H]");
            }
            Integer value = f.evaluate(u);
            ordered_json row;
            row["u"] = string_array(u);
            row["value"] = value.get_str();
            if (value == 0) {
                row["height"] = nullptr;  // zero values carry no height
                row["within_bound"] = true;
            } else {
                HeightValue h = weil_height(Rational(value));
                row["height"] = h.exact.get_str();
                row["log_height"] = h.log_value;
                row["within_bound"] = h.exact <= bound;
            }
            rows.push_back(row);
        }
        payload["points"] = rows;
        em.budget_used += static_cast<long>(args.points.size() / args.m);
        em.finish(payload);
        return 0;
    }

    // full box sweep
    Box box{args.m, args.H};
    Integer required = box.point_count();
    if (required > Integer(static_cast<unsigned long>(args.budget)))
        throw budget_error(required, args.budget);
    const std::int64_t Hs = static_cast<std::int64_t>(args.H);
    std::vector<std::int64_t> cur(args.m, -Hs);
    std::vector<Integer> u(args.m);
    Integer max_height = 0;
    std::vector<std::int64_t> argmax(args.m, 0);
    std::uint64_t checked = 0, violations = 0, zero_values = 0;
    bool done = false;
    while (!done) {
        for (unsigned j = 0; j < args.m; ++j) u[j] = static_cast<long>(cur[j]);
        Integer value = f.evaluate(u);
        ++checked;
        if (value == 0) {
            ++zero_values;  // zero values carry no height
        } else {
            HeightValue h = weil_height(Rational(value));
            if (h.exact > bound) ++violations;
            if (h.exact > max_height) {
                max_height = h.exact;
                argmax = cur;
            }
        }
        int j = static_cast<int>(args.m) - 1;
        while (j >= 0 && cur[j] == Hs) cur[j--] = -Hs;
        if (j < 0)
            done = true;
        else
            ++cur[j];
    }
    ordered_json sweep;
    sweep["points_checked"] = checked;
    sweep["zero_values"] = zero_values;
    sweep["max_height"] = max_height.get_str();
    sweep["argmax"] = argmax;
    sweep["violations"] = violations;
    payload["sweep"] = sweep;
    em.budget_used += required;
    em.finish(payload);
    return 0;
}

struct Example11Args {
    unsigned n = 2;
    std::uint64_t H = 50;
    std::uint64_t budget = 100'000'000;
    unsigned threads = 1;
};

int run_example11(const Example11Args& args, Emitter& em) {
    em.parameters["n"] = args.n;
    em.parameters["H"] = args.H;
    em.parameters["budget"] = args.budget;
    em.parameters["threads"] = args.threads;
    PolySystem F = example11_family(args.n);
    CountOptions opts;
    opts.budget = args.budget;
    opts.threads = args.threads;
    std::uint64_t c = count_NF(F, args.H, opts);

    ordered_json payload;
    payload["n"] = args.n;
    payload["modulus_prime"] = nth_prime(args.n).get_str();
    ordered_json polys = ordered_json::array();
    for (const MPoly& f : F.components) polys.push_back(f.to_string());
    payload["polynomials"] = polys;
    payload["H"] = args.H;
    payload["N_F"] = c;
    em.budget_used += Box{args.n, args.H}.point_count();
    em.finish(payload);
    return 0;
}

struct Example13Args {
    unsigned n = 2;
    std::uint64_t H = 1;
    std::uint64_t budget = 100'000'000;
    unsigned threads = 1;
};

int run_example13(const Example13Args& args, Emitter& em) {
    if (args.n < 2) throw std::invalid_argument("n must be at least 2");
    if (args.H < 1) throw std::invalid_argument("H must be at least 1");
    em.parameters["n"] = args.n;
    em.parameters["H"] = args.H;
    em.parameters["budget"] = args.budget;
    em.parameters["threads"] = args.threads;

    PolySystem F = make_system(std::vector<MPoly>(args.n, MPoly::variable(1, 0)));
    CountOptions opts;
    opts.budget = args.budget;
    opts.threads = args.threads;
    std::uint64_t c = count_NF(F, args.H, opts);
    double main_term = static_cast<double>(args.n) * (args.n + 1) *
                       std::pow(2.0 * static_cast<double>(args.H), static_cast<double>(args.n - 1));

    ordered_json payload;
    payload["n"] = args.n;
    payload["H"] = args.H;
    payload["N_F"] = c;
    payload["main_term"] = main_term;
    payload["ratio"] = static_cast<double>(c) / main_term;
    em.budget_used += Box{args.n, args.H}.point_count();
    em.finish(payload);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for multiplicative dependence of polynomial values"};
    app.require_subcommand(1);

    DepsArgs deps_args;
    CLI::App* sc_deps = app.add_subcommand("deps", "decide dependence of rational values");
    sc_deps->add_option("values", deps_args.values, "nonzero rationals (p or p/q)")->required();
    sc_deps->add_option("--search-bound", deps_args.search_bound, "relation search window")
        ->check(CLI::Range(1, 1000));

    DepsArgs rank_args;
    CLI::App* sc_rank = app.add_subcommand("rank", "multiplicative rank of rational values");
    sc_rank->add_option("values", rank_args.values, "nonzero rationals (p or p/q)")->required();

    auto add_config_options = [&](CLI::App* sc, ConfigArgs& args, Emitter& em) {
        sc->add_option("config", args.path, "experiment config (JSON)")->required();
        sc->add_option("--budget", args.budget, "max tuples enumerated per call");
        sc->add_option("--threads", args.threads, "worker threads")->check(CLI::Range(1, 256));
        sc->add_option("--search-bound", args.search_bound, "relation search window")
            ->check(CLI::Range(1, 1000));
        sc->add_option("--out", em.out_path, "write the JSON report here too");
        sc->add_option("--csv", em.csv_path, "write the CSV table here");
    };

    Emitter em_count, em_gcdset, em_hyper, em_scaling;
    ConfigArgs count_args, gcdset_args, hyper_args, scaling_args;
    CLI::App* sc_count = app.add_subcommand("count", "dependent-tuple counts and rank decomposition");
    add_config_options(sc_count, count_args, em_count);
    CLI::App* sc_gcdset = app.add_subcommand("gcdset", "distinct gcd values over the box");
    add_config_options(sc_gcdset, gcdset_args, em_gcdset);
    CLI::App* sc_hyper = app.add_subcommand("hypersurface", "level-set point counts and slope fit");
    add_config_options(sc_hyper, hyper_args, em_hyper);
    CLI::App* sc_scaling = app.add_subcommand("scaling", "N_F slope fit over a height list");
    add_config_options(sc_scaling, scaling_args, em_scaling);

    PsiArgs psi_args;
    CLI::App* sc_psi = app.add_subcommand("psi", "count of y-smooth integers up to x");
    sc_psi->add_option("x", psi_args.x, "upper limit")->required();
    sc_psi->add_option("y", psi_args.y, "smoothness bound")->required();

    HeightsArgs heights_args;
    CLI::App* sc_heights = app.add_subcommand("heights", "height growth of polynomial values");
    sc_heights->add_option("f", heights_args.source, "polynomial in x0..x{m-1}")->required();
    sc_heights->add_option("H", heights_args.H, "box height")->required();
    sc_heights->add_option("points", heights_args.points, "evaluation points (m integers each)");
    sc_heights->add_option("--m", heights_args.m, "number of variables")->check(CLI::Range(1, 8));
    sc_heights->add_option("--budget", heights_args.budget, "max points swept");

    PolyArgs pplus_args;
    CLI::App* sc_pplus = app.add_subcommand("pplus", "largest-prime-factor profile by shell");
    sc_pplus->add_option("f", pplus_args.source, "polynomial in x0..x{m-1}")->required();
    sc_pplus->add_option("H", pplus_args.H, "box height")->required();
    sc_pplus->add_option("--m", pplus_args.m, "number of variables")->check(CLI::Range(1, 8));
    sc_pplus->add_option("--budget", pplus_args.budget, "max points enumerated");

    Example11Args ex11_args;
    CLI::App* sc_ex11 = app.add_subcommand("example11", "shifted factorial family count");
    sc_ex11->add_option("n", ex11_args.n, "number of components (2..20)")->required();
    sc_ex11->add_option("--height", ex11_args.H, "box height");
    sc_ex11->add_option("--budget", ex11_args.budget, "max tuples enumerated");
    sc_ex11->add_option("--threads", ex11_args.threads, "worker threads")->check(CLI::Range(1, 256));

    Example13Args ex13_args;
    CLI::App* sc_ex13 = app.add_subcommand("example13", "identity family count vs its main term");
    sc_ex13->add_option("n", ex13_args.n, "number of copies (>= 2)")->required();
    sc_ex13->add_option("H", ex13_args.H, "box height")->required();
    sc_ex13->add_option("--budget", ex13_args.budget, "max tuples enumerated");
    sc_ex13->add_option("--threads", ex13_args.threads, "worker threads")->check(CLI::Range(1, 256));

    Emitter em_simple;
    auto add_out = [&](CLI::App* sc) {
        sc->add_option("--out", em_simple.out_path, "write the JSON report here too");
        sc->add_option("--csv", em_simple.csv_path, "write the CSV table here");
    };
    add_out(sc_deps);
    add_out(sc_rank);
    add_out(sc_psi);
    add_out(sc_heights);
    add_out(sc_pplus);
    add_out(sc_ex11);
    add_out(sc_ex13);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sc_deps)) {
            em_simple.command = "deps";
            return run_deps(deps_args, em_simple, false);
        }
        if (app.got_subcommand(sc_rank)) {
            em_simple.command = "rank";
            return run_deps(rank_args, em_simple, true);
        }
        if (app.got_subcommand(sc_count)) {
            em_count.command = "count";
            return run_count(count_args, em_count);
        }
        if (app.got_subcommand(sc_gcdset)) {
            em_gcdset.command = "gcdset";
            return run_gcdset(gcdset_args, em_gcdset);
        }
        if (app.got_subcommand(sc_hyper)) {
            em_hyper.command = "hypersurface";
            return run_hypersurface(hyper_args, em_hyper);
        }
        if (app.got_subcommand(sc_scaling)) {
            em_scaling.command = "scaling";
            return run_scaling(scaling_args, em_scaling);
        }
        if (app.got_subcommand(sc_psi)) {
            em_simple.command = "psi";
            return run_psi(psi_args, em_simple);
        }
        if (app.got_subcommand(sc_heights)) {
            em_simple.command = "heights";
            return run_heights(heights_args, em_simple);
        }
        if (app.got_subcommand(sc_pplus)) {
            em_simple.command = "pplus";
            return run_pplus(pplus_args, em_simple);
        }
        if (app.got_subcommand(sc_ex11)) {
            em_simple.command = "example11";
            return run_example11(ex11_args, em_simple);
        }
        if (app.got_subcommand(sc_ex13)) {
            em_simple.command = "example13";
            return run_example13(ex13_args, em_simple);
        }
        throw internal_error("unhandled subcommand");
    } catch (const budget_error& e) {
        std::cerr << "multdep: refused: " << e.what() << "\n";
        return 3;
    } catch (const config_error& e) {
        std::cerr << "multdep: " << e.what() << "\n";
        return 2;
    } catch (const poly_parse_error& e) {
        std::cerr << "multdep: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "multdep: internal check failed: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "multdep: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "multdep: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "multdep: internal error: " << e.what() << "\n";
        return 4;
    }
}
