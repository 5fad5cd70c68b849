#ifndef MULTDEP_POLY_HPP
#define MULTDEP_POLY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "multdep/arith.hpp"

namespace multdep {

struct Term {
    Integer coeff;                // nonzero
    std::vector<unsigned> exps;   // one entry per variable
};

// Sparse polynomial over the integers in variables x0..x{m-1}. Terms are
// kept in graded-lex descending order (x0 > x1 > ...) with no zero
// coefficients and pairwise distinct exponent tuples, so equality and
// printing are canonical.
class MPoly {
public:
    explicit MPoly(unsigned num_vars) : m_(num_vars) {
        if (num_vars == 0) throw std::invalid_argument("MPoly: need at least one variable");
    }
    static MPoly constant(unsigned num_vars, const Integer& c);
    static MPoly variable(unsigned num_vars, unsigned index);

    unsigned num_vars() const { return m_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Integer constant_value() const;  // requires is_constant()

    unsigned total_degree() const;  // domain_error on the zero polynomial
    MPoly homogeneous_part(unsigned d) const;
    bool is_homogeneous() const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& rhs) const;
    MPoly operator-(const MPoly& rhs) const;
    MPoly operator*(const MPoly& rhs) const;
    bool operator==(const MPoly& rhs) const;
    bool operator!=(const MPoly& rhs) const { return !(*this == rhs); }
    MPoly pow(unsigned e) const;

    Integer evaluate(const std::vector<Integer>& point) const;
    // Overflow-checked evaluation in machine words; nullopt means the
    // caller must redo the computation with big integers.
    std::optional<std::int64_t> evaluate_i64(const std::vector<std::int64_t>& point) const;
    // Upper bound for |f(u)| over the box max|u_j| <= H.
    Integer evaluate_bound(std::uint64_t box_half_width) const;

    std::string to_string() const;

    // Used by the parser and arithmetic: sorts, merges, drops zeros.
    static MPoly from_terms(unsigned num_vars, std::vector<Term> raw);

private:
    unsigned m_;
    std::vector<Term> terms_;
};

class poly_parse_error : public std::runtime_error {
public:
    poly_parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Grammar: variables x0..x{m-1}, integer literals, + - * ^ (nonnegative
// integer exponents), parentheses; whitespace insignificant;
// multiplication is always explicit.
MPoly parse_poly(const std::string& text, unsigned num_vars);

// Primitive gcd in Z[X] with positive leading coefficient, computed by a
// subresultant pseudo-remainder sequence. A constant result certifies the
// inputs share no complex zero.
MPoly univariate_gcd(const MPoly& f, const MPoly& g);

// For a nonzero homogeneous h(x0, x1): decides existence of a linear
// factor over Q via divisibility by x0/x1 plus a rational root test on
// the dehomogenization h(t, 1).
bool binary_form_has_linear_factor(const MPoly& h);

struct PolySystem {
    std::vector<MPoly> components;
    unsigned num_vars() const { return components.front().num_vars(); }
    std::size_t size() const { return components.size(); }
};

PolySystem make_system(std::vector<MPoly> components);

// The univariate family f_i = g + p_i with g = X(X-1)...(X-M), M = p_n:
// f_i(u) is divisible by p_i but never by p_j (j != i, j <= n), so no
// tuple of values is multiplicatively dependent.
PolySystem example11_family(unsigned n);

}  // namespace multdep

#endif
