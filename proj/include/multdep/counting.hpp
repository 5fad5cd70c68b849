#ifndef MULTDEP_COUNTING_HPP
#define MULTDEP_COUNTING_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "multdep/poly.hpp"
#include "multdep/relations.hpp"

namespace multdep {

// The integer box [-H,H]^m with its (2H+1)^m points.
struct Box {
    unsigned m = 1;
    std::uint64_t H = 0;
    Integer point_count() const;
};

// Raised instead of silently truncating: partial counts would make the
// decomposition identities meaningless.
class budget_error : public std::runtime_error {
public:
    budget_error(Integer required, std::uint64_t allowed)
        : std::runtime_error("enumeration budget exceeded: " + required.get_str() +
                             " tuples needed, budget is " + std::to_string(allowed)),
          required_(std::move(required)),
          allowed_(allowed) {}
    const Integer& required() const { return required_; }
    std::uint64_t allowed() const { return allowed_; }

private:
    Integer required_;
    std::uint64_t allowed_;
};

struct CountOptions {
    std::uint64_t budget = 100'000'000;  // max tuples enumerated per call
    unsigned threads = 1;
    long search_bound = 20;       // window for minimal-relation searches
    bool collect_witnesses = true;  // star counts: record (point, relation)
};

// Tuples (u_1,...,u_n) in ([-H,H]^m)^n with every f_i(u_i) nonzero and
// the value vector multiplicatively dependent.
std::uint64_t count_NF(const PolySystem& F, std::uint64_t H, const CountOptions& opts = {});

struct RankDecomposition {
    std::vector<std::uint64_t> counts;  // counts[s] = tuples of rank s, s = 0..n-1
    std::uint64_t independent_count = 0;
    std::uint64_t zero_coordinate_count = 0;  // tuples with some f_i(u_i) = 0
    std::uint64_t total_tuples = 0;
    std::uint64_t dependent_total() const;
};

// Same universe as count_NF but classified by multiplicative rank, via an
// independent code path so the two totals cross-check each other.
RankDecomposition count_NF_by_rank(const PolySystem& F, std::uint64_t H,
                                   const CountOptions& opts = {});

struct StarWitness {
    std::vector<Integer> point;     // u with dependent (f_1(u),...,f_n(u))
    std::vector<Integer> relation;  // minimal relation for the value vector
};

struct StarCount {
    std::uint64_t count = 0;
    std::uint64_t zero_coordinate_count = 0;
    std::vector<StarWitness> witnesses;  // in box enumeration order
};

// Shared-point variant: u ranges over [-H,H]^m and all components are
// evaluated at the same u.
StarCount count_NF_star(const PolySystem& F, std::uint64_t H, const CountOptions& opts = {});

struct GcdValueReport {
    std::vector<Integer> values;          // sorted distinct gcd(f_1(u),...,f_n(u))
    std::uint64_t all_zero_points = 0;    // u where every component vanishes
    std::uint64_t unit_value_points = 0;  // u where some |f_i(u)| = 1
    // For univariate systems: every pair of components has constant gcd
    // in Z[X] (certifying no common complex zero). Absent when m > 1.
    std::optional<bool> pairwise_coprime;
};

GcdValueReport gcd_value_set(const PolySystem& F, std::uint64_t H, const CountOptions& opts = {});

struct ShellStat {
    std::uint64_t radius = 0;  // points with max-norm exactly this value
    std::optional<Integer> min_largest_prime;  // over |f(u)| >= 2 on the shell
    std::uint64_t skipped = 0;                 // shell points with |f(u)| <= 1
};

// Per-shell minima of the largest prime factor of f(u), shells 0..H.
std::vector<ShellStat> pplus_profile(const MPoly& f, std::uint64_t H,
                                     const CountOptions& opts = {});

// |{u in [-H,H]^m : f(u) = target}| by exact enumeration.
std::uint64_t hypersurface_count(const MPoly& f, const Integer& target, std::uint64_t H,
                                 const CountOptions& opts = {});

struct ScalingReport {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> used;  // (H, count) after filtering
    double slope = 0;
    double intercept = 0;
    double target_exponent = 0;
    double slope_minus_target = 0;
    std::vector<double> residuals;  // log count - fit, per used point
};

// Least squares on (log H, log count), keeping only H >= 10 and count > 0;
// needs at least 3 surviving points.
ScalingReport scaling_fit(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts,
                          double target_exponent);

// Piecewise saving exponent: 1 when m = 1; for m > 1, 2 when d >= 4 and
// 3 - 2/sqrt(3) when d = 3; undefined otherwise.
double v_md(unsigned m, unsigned d);

// count_NF for n identical copies of x0, divided by the main term
// n(n+1)(2H)^(n-1).
double example13_ratio(unsigned n, std::uint64_t H, const CountOptions& opts = {});

struct RelationProfile {
    std::uint64_t dependent_points = 0;
    Integer max_norm;       // sup norm of the largest minimal relation seen
    double median_norm = 0;
    double growth_constant = 0;  // max over components of the height growth exponent
    double fitted_A = 0;         // max_norm / (growth_constant * log H)^(n-1)
};

// Sizes of minimal relations among shared-point witnesses; the fitted
// constant is recorded, never asserted.
RelationProfile relation_size_profile(const PolySystem& F, std::uint64_t H,
                                      const CountOptions& opts = {});

}  // namespace multdep

#endif
