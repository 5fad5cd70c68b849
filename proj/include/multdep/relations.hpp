#ifndef MULTDEP_RELATIONS_HPP
#define MULTDEP_RELATIONS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "multdep/arith.hpp"

namespace multdep {

// Multiplicative encoding of a nonzero rational: sign * prod p^e_p.
// Uniqueness makes dependence over Q a question about integer linear
// algebra on the exponents.
struct ExponentVector {
    int sign = 1;
    std::map<Integer, long> exps;  // prime -> nonzero exponent (negative for denominators)
};

ExponentVector exponent_vector(const Rational& value);

// True iff the rows, viewed as vectors over Q, are linearly dependent.
// The machine-word overload falls back to big integers if fraction-free
// elimination overflows.
bool integer_rows_dependent(std::vector<std::vector<std::int64_t>> rows);
bool integer_rows_dependent(std::vector<std::vector<Integer>> rows);

bool is_mult_dependent(const std::vector<Rational>& nu);

// Basis of {k : k^T M = 0} for the matrix whose rows are the given
// vectors; each basis vector has content 1 and positive first nonzero
// entry. Empty result means only the trivial solution.
std::vector<std::vector<Integer>> integer_kernel_basis(
    const std::vector<std::vector<Integer>>& rows);

struct Relation {
    std::vector<Integer> k;  // not all zero; prod nu_i^{k_i} = 1 for its vector
};

// Smallest relation (sup-norm, then lexicographic with positive leading
// entry) among integer combinations of the kernel basis with combination
// coefficients in [-search_bound, search_bound]. Sign obstructions are
// absorbed by doubling, since -1 is the only nontrivial rational root of
// unity.
std::optional<Relation> find_relation(const std::vector<Rational>& nu, long search_bound = 20);

struct RankResult {
    unsigned rank = 0;
    // 1-based indices of a smallest multiplicatively dependent subset;
    // absent when the whole vector is independent (rank = n).
    std::optional<std::vector<std::size_t>> witness;
};

// rank 0: some coordinate is +-1; rank s in (0,n): smallest dependent
// subset has size s+1; rank n: independent.
RankResult mult_rank(const std::vector<Rational>& nu);

}  // namespace multdep

#endif
