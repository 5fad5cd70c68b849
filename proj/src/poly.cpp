#include "multdep/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace multdep {

namespace {

unsigned term_degree(const std::vector<unsigned>& exps) {
    return std::accumulate(exps.begin(), exps.end(), 0u);
}

// Graded lex, x0 > x1 > ...: higher total degree first, ties broken by
// comparing exponents from x0 onward.
bool term_before(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    unsigned da = term_degree(a), db = term_degree(b);
    if (da != db) return da > db;
    return a > b;
}

}  // namespace

MPoly MPoly::from_terms(unsigned num_vars, std::vector<Term> raw) {
    for (const auto& t : raw)
        if (t.exps.size() != num_vars)
            throw std::invalid_argument("MPoly: exponent tuple arity mismatch");
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return term_before(a.exps, b.exps); });
    MPoly p(num_vars);
    for (auto& t : raw) {
        if (!p.terms_.empty() && p.terms_.back().exps == t.exps)
            p.terms_.back().coeff += t.coeff;
        else
            p.terms_.push_back(std::move(t));
        if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    }
    return p;
}

MPoly MPoly::constant(unsigned num_vars, const Integer& c) {
    MPoly p(num_vars);
    if (c != 0) p.terms_.push_back({c, std::vector<unsigned>(num_vars, 0)});
    return p;
}

MPoly MPoly::variable(unsigned num_vars, unsigned index) {
    if (index >= num_vars) throw std::invalid_argument("MPoly: variable index out of range");
    MPoly p(num_vars);
    std::vector<unsigned> e(num_vars, 0);
    e[index] = 1;
    p.terms_.push_back({Integer(1), std::move(e)});
    return p;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && term_degree(terms_[0].exps) == 0);
}

Integer MPoly::constant_value() const {
    if (!is_constant()) throw std::domain_error("MPoly: not a constant");
    return terms_.empty() ? Integer(0) : terms_[0].coeff;
}

unsigned MPoly::total_degree() const {
    if (terms_.empty()) throw std::domain_error("total_degree: zero polynomial");
    return term_degree(terms_[0].exps);  // canonical order puts top degree first
}

MPoly MPoly::homogeneous_part(unsigned d) const {
    std::vector<Term> kept;
    for (const auto& t : terms_)
        if (term_degree(t.exps) == d) kept.push_back(t);
    return from_terms(m_, std::move(kept));
}

bool MPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = term_degree(terms_[0].exps);
    for (const auto& t : terms_)
        if (term_degree(t.exps) != d) return false;
    return true;
}

MPoly MPoly::operator-() const {
    MPoly p(m_);
    p.terms_ = terms_;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

MPoly MPoly::operator+(const MPoly& rhs) const {
    if (m_ != rhs.m_) throw std::invalid_argument("MPoly: mixed variable counts");
    std::vector<Term> all = terms_;
    all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
    return from_terms(m_, std::move(all));
}

MPoly MPoly::operator-(const MPoly& rhs) const { return *this + (-rhs); }

MPoly MPoly::operator*(const MPoly& rhs) const {
    if (m_ != rhs.m_) throw std::invalid_argument("MPoly: mixed variable counts");
    std::vector<Term> prod;
    prod.reserve(terms_.size() * rhs.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : rhs.terms_) {
            Term t;
            t.coeff = a.coeff * b.coeff;
            t.exps.resize(m_);
            for (unsigned j = 0; j < m_; ++j) t.exps[j] = a.exps[j] + b.exps[j];
            prod.push_back(std::move(t));
        }
    }
    return from_terms(m_, std::move(prod));
}

bool MPoly::operator==(const MPoly& rhs) const {
    if (m_ != rhs.m_ || terms_.size() != rhs.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coeff != rhs.terms_[i].coeff || terms_[i].exps != rhs.terms_[i].exps)
            return false;
    return true;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly result = constant(m_, 1);
    MPoly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Integer MPoly::evaluate(const std::vector<Integer>& point) const {
    if (point.size() != m_) throw std::invalid_argument("evaluate: arity mismatch");
    Integer acc = 0, pw, mon;
    for (const auto& t : terms_) {
        mon = t.coeff;
        for (unsigned j = 0; j < m_; ++j) {
            if (t.exps[j] == 0) continue;
            mpz_pow_ui(pw.get_mpz_t(), point[j].get_mpz_t(), t.exps[j]);
            mon *= pw;
        }
        acc += mon;
    }
    return acc;
}

std::optional<std::int64_t> MPoly::evaluate_i64(const std::vector<std::int64_t>& point) const {
    if (point.size() != m_) throw std::invalid_argument("evaluate: arity mismatch");
    std::int64_t acc = 0;
    for (const auto& t : terms_) {
        if (!t.coeff.fits_slong_p()) return std::nullopt;
        std::int64_t mon = t.coeff.get_si();
        for (unsigned j = 0; j < m_; ++j) {
            for (unsigned e = 0; e < t.exps[j]; ++e)
                if (__builtin_mul_overflow(mon, point[j], &mon)) return std::nullopt;
        }
        if (__builtin_add_overflow(acc, mon, &acc)) return std::nullopt;
    }
    return acc;
}

Integer MPoly::evaluate_bound(std::uint64_t box_half_width) const {
    Integer bound = 0, pw;
    Integer h(static_cast<unsigned long>(box_half_width));
    for (const auto& t : terms_) {
        mpz_pow_ui(pw.get_mpz_t(), h.get_mpz_t(), term_degree(t.exps));
        bound += abs(t.coeff) * pw;
    }
    return bound;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        Integer c = t.coeff;
        if (i == 0) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            c = abs(c);
        }
        bool has_vars = term_degree(t.exps) > 0;
        bool coeff_shown = !has_vars || c != 1;
        if (coeff_shown) out += c.get_str();
        bool first_factor = !coeff_shown;
        for (unsigned j = 0; j < m_; ++j) {
            if (t.exps[j] == 0) continue;
            if (!first_factor) out += "*";
            first_factor = false;
            out += "x" + std::to_string(j);
            if (t.exps[j] > 1) out += "^" + std::to_string(t.exps[j]);
        }
    }
    return out;
}

namespace {

class Parser {
public:
    Parser(const std::string& text, unsigned num_vars) : s_(text), m_(num_vars) {}

    MPoly run() {
        MPoly p = expr();
        skip_ws();
        if (pos_ != s_.size()) throw poly_parse_error("unexpected trailing input", pos_);
        return p;
    }

private:
    const std::string& s_;
    unsigned m_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    int peek() {
        skip_ws();
        return pos_ < s_.size() ? static_cast<unsigned char>(s_[pos_]) : -1;
    }

    MPoly expr() {
        MPoly acc = term();
        for (;;) {
            int c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    MPoly term() {
        MPoly acc = factor();
        while (peek() == '*') {
            ++pos_;
            acc = acc * factor();
        }
        return acc;
    }

    MPoly factor() {
        int c = peek();
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '+') {
            ++pos_;
            return factor();
        }
        MPoly base = atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            unsigned e = exponent();
            return base.pow(e);
        }
        return base;
    }

    MPoly atom() {
        int c = peek();
        if (c == '(') {
            ++pos_;
            MPoly inner = expr();
            if (peek() != ')') throw poly_parse_error("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (c == 'x') {
            std::size_t at = pos_;
            ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw poly_parse_error("expected variable index after 'x'", pos_);
            unsigned long idx = digits();
            if (idx >= m_) throw poly_parse_error("variable index out of range", at);
            return MPoly::variable(m_, static_cast<unsigned>(idx));
        }
        if (c >= '0' && c <= '9') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return MPoly::constant(m_, Integer(s_.substr(start, pos_ - start)));
        }
        throw poly_parse_error("expected number, variable or '('", pos_);
    }

    unsigned long digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw poly_parse_error("expected digits", pos_);
        const std::string d = s_.substr(start, pos_ - start);
        if (d.size() > 6) throw poly_parse_error("number too large here", start);
        return std::stoul(d);
    }

    unsigned exponent() {
        int c = peek();
        if (c < '0' || c > '9')
            throw poly_parse_error("expected nonnegative integer exponent", pos_);
        unsigned long e = digits();
        if (e > 10000) throw poly_parse_error("exponent too large", pos_);
        return static_cast<unsigned>(e);
    }
};

}  // namespace

MPoly parse_poly(const std::string& text, unsigned num_vars) {
    if (num_vars == 0) throw std::invalid_argument("parse_poly: need at least one variable");
    return Parser(text, num_vars).run();
}

namespace {

// Dense univariate form: coeffs[i] is the coefficient of X^i, highest
// entry nonzero; empty vector is the zero polynomial.
using Dense = std::vector<Integer>;

void trim(Dense& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Dense to_dense(const MPoly& f) {
    if (f.num_vars() != 1) throw std::invalid_argument("univariate operation on multivariate input");
    Dense d;
    for (const auto& t : f.terms()) {
        if (t.exps[0] >= d.size()) d.resize(t.exps[0] + 1, Integer(0));
        d[t.exps[0]] = t.coeff;
    }
    trim(d);
    return d;
}

MPoly from_dense(const Dense& d) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) terms.push_back({d[i], {static_cast<unsigned>(i)}});
    return MPoly::from_terms(1, std::move(terms));
}

Integer content(const Dense& p) {
    Integer c = 0;
    for (const auto& x : p) c = gcd(c, x);
    return c;
}

void divide_exact(Dense& p, const Integer& d) {
    for (auto& x : p) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

// Pseudo-remainder: returns R with lc(B)^(deg A - deg B + 1) * A = Q*B + R.
Dense prem(Dense A, const Dense& B) {
    const Integer& d = B.back();
    long e = static_cast<long>(A.size()) - static_cast<long>(B.size()) + 1;
    while (!A.empty() && A.size() >= B.size()) {
        Integer s = A.back();
        std::size_t shift = A.size() - B.size();
        Dense next(A.size() - 1, Integer(0));
        for (std::size_t i = 0; i + 1 < A.size(); ++i) {
            next[i] = d * A[i];
            if (i >= shift) next[i] -= s * B[i - shift];
        }
        trim(next);
        A = std::move(next);
        --e;
    }
    if (e > 0) {
        Integer scale;
        mpz_pow_ui(scale.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& x : A) x *= scale;
    }
    return A;
}

}  // namespace

MPoly univariate_gcd(const MPoly& f, const MPoly& g) {
    Dense A = to_dense(f), B = to_dense(g);
    if (A.empty() || B.empty()) throw std::domain_error("univariate_gcd: zero input");
    if (A.size() < B.size()) std::swap(A, B);
    divide_exact(A, content(A));
    divide_exact(B, content(B));

    // Subresultant PRS on the primitive parts; intermediate coefficients
    // stay bounded because each pseudo-remainder is divided by g*h^delta.
    Integer gc = 1, h = 1;
    while (B.size() > 1) {
        unsigned long delta = A.size() - B.size();  // A kept at least as long as B
        Dense R = prem(A, B);
        if (R.empty()) break;
        if (R.size() == 1) {
            B = {Integer(1)};
            break;
        }
        A = std::move(B);
        Integer hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), delta);
        Integer divisor = gc * hd;
        divide_exact(R, divisor);
        B = std::move(R);
        gc = A.back();
        if (delta > 0) {
            Integer gd;
            mpz_pow_ui(gd.get_mpz_t(), gc.get_mpz_t(), delta);
            mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), delta - 1);
            mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd.get_mpz_t());
        }
    }
    divide_exact(B, content(B));
    if (B.back() < 0)
        for (auto& x : B) x = -x;
    return from_dense(B);
}

namespace {

std::vector<Integer> positive_divisors(const Integer& n) {
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [p, e] : factorize(n).factors) {
        std::size_t base = divs.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

}  // namespace

bool binary_form_has_linear_factor(const MPoly& h) {
    if (h.num_vars() != 2) throw std::invalid_argument("binary form must have two variables");
    if (h.is_zero()) throw std::domain_error("binary form must be nonzero");
    if (!h.is_homogeneous()) throw std::domain_error("binary form must be homogeneous");
    unsigned d = h.total_degree();
    if (d == 0) return false;
    if (d == 1) return true;

    std::vector<Integer> c(d + 1, Integer(0));  // h = sum c[j] * x0^j * x1^(d-j)
    for (const auto& t : h.terms()) c[t.exps[0]] = t.coeff;
    if (c[0] == 0 || c[d] == 0) return true;  // divisible by x0 resp. x1

    // Remaining linear factors q*x0 - p*x1 correspond to rational roots
    // p/q of h(t, 1), with p | c[0] and q | c[d].
    std::vector<Integer> ppow(d + 1), qpow(d + 1);
    for (const Integer& p : positive_divisors(c[0])) {
        for (const Integer& q : positive_divisors(c[d])) {
            if (gcd(p, q) != 1) continue;
            ppow[0] = 1, qpow[0] = 1;
            for (unsigned j = 1; j <= d; ++j) ppow[j] = ppow[j - 1] * p, qpow[j] = qpow[j - 1] * q;
            Integer plus = 0, minus = 0;
            for (unsigned j = 0; j <= d; ++j) {
                Integer v = c[j] * ppow[j] * qpow[d - j];
                plus += v;
                minus += (j % 2 == 0) ? v : -v;  // evaluates at -p/q
            }
            if (plus == 0 || minus == 0) return true;
        }
    }
    return false;
}

PolySystem make_system(std::vector<MPoly> components) {
    if (components.empty()) throw std::invalid_argument("system needs at least one polynomial");
    unsigned m = components.front().num_vars();
    for (const auto& f : components)
        if (f.num_vars() != m) throw std::invalid_argument("system components disagree on variable count");
    return PolySystem{std::move(components)};
}

PolySystem example11_family(unsigned n) {
    if (n < 2) throw std::domain_error("family needs n >= 2");
    if (n > 20) throw std::domain_error("family capped at n = 20");
    unsigned long M = nth_prime(n).get_ui();
    MPoly x = MPoly::variable(1, 0);
    MPoly g = MPoly::constant(1, 1);
    for (unsigned long j = 0; j <= M; ++j)
        g = g * (x - MPoly::constant(1, Integer(static_cast<unsigned long>(j))));
    std::vector<MPoly> fs;
    for (unsigned i = 1; i <= n; ++i) fs.push_back(g + MPoly::constant(1, nth_prime(i)));
    return make_system(std::move(fs));
}

}  // namespace multdep
