#include "multdep/heights.hpp"

#include <cmath>
#include <stdexcept>

namespace multdep {

double log_of(const Integer& n) {
    if (n <= 0) throw std::domain_error("log_of: positive input required");
    long exp2;
    double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

HeightValue weil_height(const Rational& value) {
    if (value == 0) throw std::domain_error("weil_height: zero has no height here");
    Rational v = value;
    v.canonicalize();  // height is a function of the value, not the fraction
    Integer num = abs(v.get_num());
    Integer exact = num > v.get_den() ? num : v.get_den();
    return {exact, log_of(exact)};
}

Integer naive_height(const Rational& value) { return weil_height(value).exact; }

double height_growth_constant(const MPoly& f, double box_height) {
    if (f.is_zero()) throw std::domain_error("height_growth_constant: zero polynomial");
    if (!(box_height > 1.0)) throw std::domain_error("height_growth_constant: box height must exceed 1");
    Integer coeff_product = 1;
    unsigned long exp_sum = 0;
    for (const auto& t : f.terms()) {
        coeff_product *= abs(t.coeff);
        for (unsigned e : t.exps) exp_sum += e;
    }
    coeff_product *= static_cast<unsigned long>(f.terms().size());
    return log_of(coeff_product) / std::log(box_height) + static_cast<double>(exp_sum);
}

Integer height_growth_bound(const MPoly& f, const Integer& box_height) {
    if (f.is_zero()) throw std::domain_error("height_growth_bound: zero polynomial");
    if (box_height < 1) throw std::domain_error("height_growth_bound: box height must be >= 1");
    Integer coeff_product = 1;
    unsigned long exp_sum = 0;
    for (const auto& t : f.terms()) {
        coeff_product *= abs(t.coeff);
        for (unsigned e : t.exps) exp_sum += e;
    }
    coeff_product *= static_cast<unsigned long>(f.terms().size());
    Integer hpow;
    mpz_pow_ui(hpow.get_mpz_t(), box_height.get_mpz_t(), exp_sum);
    return coeff_product * hpow;
}

}  // namespace multdep
