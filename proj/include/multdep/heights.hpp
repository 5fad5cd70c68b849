#ifndef MULTDEP_HEIGHTS_HPP
#define MULTDEP_HEIGHTS_HPP

#include "multdep/arith.hpp"
#include "multdep/poly.hpp"

namespace multdep {

struct HeightValue {
    Integer exact;     // max(|numerator|, denominator), always >= 1
    double log_value;  // log(exact), accurate to double precision
};

// Height of a nonzero rational p/q in lowest terms: max(|p|, q).
HeightValue weil_height(const Rational& value);

// For rationals the naive height coincides with the exact Weil height.
Integer naive_height(const Rational& value);

double log_of(const Integer& n);  // natural log of a positive integer

// Growth exponent C such that |f(u)| <= H^C whenever max|u_j| <= H:
// C = log_H(l * prod|a_k|) + sum of all term exponents, with l the number
// of terms. Deliberately the loose textbook bound, not a tight one.
double height_growth_constant(const MPoly& f, double box_height);

// The same bound kept exact: l * prod|a_k| * H^(sum of all exponents).
Integer height_growth_bound(const MPoly& f, const Integer& box_height);

}  // namespace multdep

#endif
