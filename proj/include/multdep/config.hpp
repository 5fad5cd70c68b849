#ifndef MULTDEP_CONFIG_HPP
#define MULTDEP_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "multdep/counting.hpp"
#include "multdep/poly.hpp"

namespace multdep {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Hypotheses the tooling cannot decide; they are echoed into every result
// so downstream readers know what was taken on faith.
struct UserAssertions {
    bool ncc = false;
    bool irreducible = false;
};

struct OutputPaths {
    std::string json;  // empty = stdout only
    std::string csv;   // empty = no table emitted
};

// One experiment: a polynomial system, a list of box heights, and limits.
struct ExperimentConfig {
    std::vector<std::string> polynomial_sources;
    unsigned m = 1;  // variables per box point
    std::vector<std::uint64_t> heights;
    std::uint64_t budget = 100'000'000;
    long search_bound = 20;
    unsigned threads = 1;
    std::optional<Integer> target;          // hypersurface level-set value
    std::optional<double> target_exponent;  // reference slope for fits
    UserAssertions assertions;
    OutputPaths output;

    PolySystem system() const;  // parses every source with m variables
    CountOptions count_options() const;
};

// Strict JSON parsing: unknown keys, wrong types, or inconsistent fields
// are config_errors, so typos cannot silently change an experiment.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace multdep

#endif
