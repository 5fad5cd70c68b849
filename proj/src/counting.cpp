#include "multdep/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>

#include "multdep/heights.hpp"

namespace multdep {

namespace {

Integer box_points(unsigned m, std::uint64_t H) {
    Integer side(2 * H + 1);
    Integer total;
    mpz_pow_ui(total.get_mpz_t(), side.get_mpz_t(), m);
    return total;
}

// Number of enumerated objects, checked against the budget before any
// work starts.
std::uint64_t checked_budget(unsigned m, std::uint64_t H, unsigned copies,
                             const CountOptions& opts) {
    Integer side(2 * H + 1);
    Integer total;
    mpz_pow_ui(total.get_mpz_t(), side.get_mpz_t(), static_cast<unsigned long>(m) * copies);
    if (total > Integer(static_cast<unsigned long>(opts.budget)))
        throw budget_error(total, opts.budget);
    return mpz_get_ui(total.get_mpz_t());
}

// Lexicographic walk of [-H,H]^m, last coordinate fastest.
template <class Fn>
void for_each_point(unsigned m, std::uint64_t H, Fn&& fn) {
    std::vector<std::int64_t> u(m, -static_cast<std::int64_t>(H));
    const std::int64_t hi = static_cast<std::int64_t>(H);
    for (;;) {
        fn(static_cast<const std::vector<std::int64_t>&>(u));
        unsigned j = m;
        while (j-- > 0) {
            if (++u[j] <= hi) break;
            u[j] = -hi;
            if (j == 0) return;
        }
    }
}

// ---- indexed exponent vectors -------------------------------------------
// Primes get dense integer ids so dependence tests run on small int64
// matrices instead of maps keyed by big integers.

struct IndexedEV {
    int sign = 1;
    std::vector<std::pair<int, long>> entries;  // (prime id, exponent), sorted by id
};

class PrimePool {
public:
    int id_of(const Integer& p) {
        auto [it, inserted] = ids_.emplace(p, static_cast<int>(ids_.size()));
        return it->second;
    }

private:
    std::map<Integer, int> ids_;
};

IndexedEV index_value(const Integer& value, PrimePool& pool) {
    Factorization f = factorize(value);
    IndexedEV ev;
    ev.sign = f.sign;
    ev.entries.reserve(f.factors.size());
    for (const auto& [p, e] : f.factors)
        ev.entries.emplace_back(pool.id_of(p), static_cast<long>(e));
    std::sort(ev.entries.begin(), ev.entries.end());
    return ev;
}

// Two nonzero vectors are dependent over Q iff proportional: equal
// support and constant cross-ratio.
bool proportional(const IndexedEV& a, const IndexedEV& b) {
    if (a.entries.size() != b.entries.size()) return false;
    const long a0 = a.entries[0].second, b0 = b.entries[0].second;
    for (std::size_t j = 0; j < a.entries.size(); ++j) {
        if (a.entries[j].first != b.entries[j].first) return false;
        if (static_cast<std::int64_t>(a.entries[j].second) * b0 !=
            static_cast<std::int64_t>(b.entries[j].second) * a0)
            return false;
    }
    return true;
}

struct ComboScratch {
    std::vector<int> ids;
    std::vector<std::vector<std::int64_t>> rows;
};

bool combo_dependent(const std::vector<const IndexedEV*>& evs, ComboScratch& scratch) {
    for (const IndexedEV* ev : evs)
        if (ev->entries.empty()) return true;  // a value is +-1
    if (evs.size() == 1) return false;
    if (evs.size() == 2) return proportional(*evs[0], *evs[1]);

    scratch.ids.clear();
    for (const IndexedEV* ev : evs)
        for (const auto& [id, e] : ev->entries) scratch.ids.push_back(id);
    std::sort(scratch.ids.begin(), scratch.ids.end());
    scratch.ids.erase(std::unique(scratch.ids.begin(), scratch.ids.end()), scratch.ids.end());
    if (evs.size() > scratch.ids.size()) return true;

    scratch.rows.assign(evs.size(), std::vector<std::int64_t>(scratch.ids.size(), 0));
    for (std::size_t i = 0; i < evs.size(); ++i)
        for (const auto& [id, e] : evs[i]->entries) {
            std::size_t col =
                std::lower_bound(scratch.ids.begin(), scratch.ids.end(), id) - scratch.ids.begin();
            scratch.rows[i][col] = e;
        }
    return integer_rows_dependent(scratch.rows);
}

// Multiplicative rank of a combo of nonzero values: size of the smallest
// dependent subset minus one, or n when independent.
unsigned combo_rank(const std::vector<const IndexedEV*>& evs, ComboScratch& scratch) {
    std::size_t n = evs.size();
    for (const IndexedEV* ev : evs)
        if (ev->entries.empty()) return 0;
    for (std::size_t size = 2; size <= n; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            std::vector<const IndexedEV*> sub;
            sub.reserve(size);
            for (std::size_t i : idx) sub.push_back(evs[i]);
            if (combo_dependent(sub, scratch)) return static_cast<unsigned>(size - 1);
            std::size_t i = size;
            bool advanced = false;
            while (i-- > 0) {
                if (idx[i] < n - size + i) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    return static_cast<unsigned>(n);
}

// ---- per-component value tables ------------------------------------------

struct ValueGroup {
    Integer value;
    std::uint64_t multiplicity = 0;
    IndexedEV ev;  // meaningful only for nonzero values
};

struct ComponentTable {
    std::vector<ValueGroup> groups;  // nonzero values only, ascending
    std::uint64_t nonzero_points = 0;
    std::uint64_t zero_points = 0;
};

ComponentTable build_table(const MPoly& f, std::uint64_t H, PrimePool& pool,
                           std::map<Integer, IndexedEV>& ev_cache) {
    std::map<Integer, std::uint64_t> mult;
    const unsigned m = f.num_vars();
    // bound at H=1 still dominates every coefficient, so the machine path
    // never hits an overflow mid-evaluation
    const bool machine =
        f.evaluate_bound(std::max<std::uint64_t>(H, 1)) < (Integer(1) << 62);
    if (machine) {
        for_each_point(m, H, [&](const std::vector<std::int64_t>& u) {
            ++mult[Integer(static_cast<long>(*f.evaluate_i64(u)))];
        });
    } else {
        std::vector<Integer> u(m);
        for_each_point(m, H, [&](const std::vector<std::int64_t>& p) {
            for (unsigned j = 0; j < m; ++j) u[j] = static_cast<long>(p[j]);
            ++mult[f.evaluate(u)];
        });
    }

    ComponentTable table;
    for (auto& [value, count] : mult) {
        if (value == 0) {
            table.zero_points += count;
            continue;
        }
        table.nonzero_points += count;
        auto it = ev_cache.find(value);
        if (it == ev_cache.end()) it = ev_cache.emplace(value, index_value(value, pool)).first;
        table.groups.push_back({value, count, it->second});
    }
    return table;
}

// Walk all cross-component group combinations whose first-component index
// lies in [begin, end), calling fn(groups, multiplicity_product).
template <class Fn>
void for_each_combo(const std::vector<ComponentTable>& tables, std::size_t begin, std::size_t end,
                    Fn&& fn) {
    const std::size_t n = tables.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<const ValueGroup*> groups(n);
    for (std::size_t i = 1; i < n; ++i)
        if (tables[i].groups.empty()) return;
    for (std::size_t i0 = begin; i0 < end; ++i0) {
        groups[0] = &tables[0].groups[i0];
        std::fill(idx.begin() + 1, idx.end(), 0);
        for (;;) {
            std::uint64_t weight = groups[0]->multiplicity;
            for (std::size_t i = 1; i < n; ++i) {
                groups[i] = &tables[i].groups[idx[i]];
                weight *= groups[i]->multiplicity;
            }
            fn(groups, weight);
            std::size_t i = n;
            bool advanced = false;
            while (--i > 0) {
                if (++idx[i] < tables[i].groups.size()) {
                    advanced = true;
                    break;
                }
                idx[i] = 0;
            }
            if (!advanced) break;
        }
    }
}

// Splits [0, total) into contiguous shards, runs the worker on each, and
// lets the caller merge per-shard results in shard order.
std::vector<std::pair<std::size_t, std::size_t>> make_shards(std::size_t total, unsigned threads) {
    unsigned count = std::max(1u, threads);
    count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(total, 1)));
    std::vector<std::pair<std::size_t, std::size_t>> shards;
    std::size_t base = total / count, extra = total % count, at = 0;
    for (unsigned i = 0; i < count; ++i) {
        std::size_t len = base + (i < extra ? 1 : 0);
        shards.emplace_back(at, at + len);
        at += len;
    }
    return shards;
}

struct ZeroSplit {
    std::uint64_t all_nonzero_tuples = 0;
    std::uint64_t zero_coordinate_tuples = 0;
};

ZeroSplit split_zero_tuples(const std::vector<ComponentTable>& tables, std::uint64_t total) {
    std::uint64_t nonzero = 1;
    for (const auto& t : tables) nonzero *= t.nonzero_points;
    return {nonzero, total - nonzero};
}

}  // namespace

Integer Box::point_count() const { return box_points(m, H); }

std::uint64_t RankDecomposition::dependent_total() const {
    std::uint64_t s = 0;
    for (std::uint64_t c : counts) s += c;
    return s;
}

std::uint64_t count_NF(const PolySystem& F, std::uint64_t H, const CountOptions& opts) {
    const unsigned n = static_cast<unsigned>(F.size());
    checked_budget(F.num_vars(), H, n, opts);

    PrimePool pool;
    std::map<Integer, IndexedEV> ev_cache;
    std::vector<ComponentTable> tables;
    for (const MPoly& f : F.components) tables.push_back(build_table(f, H, pool, ev_cache));

    auto shards = make_shards(tables[0].groups.size(), opts.threads);
    std::vector<std::uint64_t> partial(shards.size(), 0);
    auto work = [&](std::size_t shard) {
        ComboScratch scratch;
        std::vector<const IndexedEV*> evs(n);
        std::uint64_t acc = 0;
        for_each_combo(tables, shards[shard].first, shards[shard].second,
                       [&](const std::vector<const ValueGroup*>& groups, std::uint64_t weight) {
                           for (unsigned i = 0; i < n; ++i) evs[i] = &groups[i]->ev;
                           if (combo_dependent(evs, scratch)) acc += weight;
                       });
        partial[shard] = acc;
    };
    if (shards.size() == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool_threads;
        for (std::size_t s = 0; s < shards.size(); ++s) pool_threads.emplace_back(work, s);
        for (auto& t : pool_threads) t.join();
    }
    std::uint64_t total = 0;
    for (std::uint64_t p : partial) total += p;
    return total;
}

RankDecomposition count_NF_by_rank(const PolySystem& F, std::uint64_t H,
                                   const CountOptions& opts) {
    const unsigned n = static_cast<unsigned>(F.size());
    std::uint64_t total = checked_budget(F.num_vars(), H, n, opts);

    PrimePool pool;
    std::map<Integer, IndexedEV> ev_cache;
    std::vector<ComponentTable> tables;
    for (const MPoly& f : F.components) tables.push_back(build_table(f, H, pool, ev_cache));

    auto shards = make_shards(tables[0].groups.size(), opts.threads);
    std::vector<std::vector<std::uint64_t>> partial(shards.size(),
                                                    std::vector<std::uint64_t>(n + 1, 0));
    auto work = [&](std::size_t shard) {
        ComboScratch scratch;
        std::vector<const IndexedEV*> evs(n);
        auto& acc = partial[shard];
        for_each_combo(tables, shards[shard].first, shards[shard].second,
                       [&](const std::vector<const ValueGroup*>& groups, std::uint64_t weight) {
                           for (unsigned i = 0; i < n; ++i) evs[i] = &groups[i]->ev;
                           acc[combo_rank(evs, scratch)] += weight;
                       });
    };
    if (shards.size() == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool_threads;
        for (std::size_t s = 0; s < shards.size(); ++s) pool_threads.emplace_back(work, s);
        for (auto& t : pool_threads) t.join();
    }

    RankDecomposition result;
    result.counts.assign(n, 0);
    result.total_tuples = total;
    for (const auto& acc : partial) {
        for (unsigned s = 0; s < n; ++s) result.counts[s] += acc[s];
        result.independent_count += acc[n];
    }
    result.zero_coordinate_count = split_zero_tuples(tables, total).zero_coordinate_tuples;
    return result;
}

StarCount count_NF_star(const PolySystem& F, std::uint64_t H, const CountOptions& opts) {
    const unsigned n = static_cast<unsigned>(F.size());
    const unsigned m = F.num_vars();
    checked_budget(m, H, 1, opts);

    // Shard on the first coordinate; workers keep private caches so the
    // merged result is independent of scheduling.
    std::size_t side = 2 * H + 1;
    auto shards = make_shards(side, opts.threads);
    std::vector<StarCount> partial(shards.size());

    auto work = [&](std::size_t shard) {
        PrimePool pool;
        std::map<Integer, IndexedEV> ev_cache;
        ComboScratch scratch;
        StarCount& acc = partial[shard];
        std::vector<Integer> u(m);
        std::vector<Integer> values(n);
        std::vector<Rational> rat(n);
        std::vector<const IndexedEV*> evs(n);

        auto visit = [&](const std::vector<std::int64_t>& rest, std::int64_t first) {
            u[0] = static_cast<long>(first);
            for (unsigned j = 1; j < m; ++j) u[j] = static_cast<long>(rest[j - 1]);
            bool zero = false;
            for (unsigned i = 0; i < n; ++i) {
                values[i] = F.components[i].evaluate(u);
                if (values[i] == 0) zero = true;
            }
            if (zero) {
                ++acc.zero_coordinate_count;
                return;
            }
            for (unsigned i = 0; i < n; ++i) {
                auto it = ev_cache.find(values[i]);
                if (it == ev_cache.end())
                    it = ev_cache.emplace(values[i], index_value(values[i], pool)).first;
                evs[i] = &it->second;
            }
            if (!combo_dependent(evs, scratch)) return;
            ++acc.count;
            if (opts.collect_witnesses) {
                for (unsigned i = 0; i < n; ++i) rat[i] = Rational(values[i]);
                auto rel = find_relation(rat, opts.search_bound);
                acc.witnesses.push_back({u, rel.value().k});
            }
        };

        for (std::size_t i0 = shards[shard].first; i0 < shards[shard].second; ++i0) {
            std::int64_t first = static_cast<std::int64_t>(i0) - static_cast<std::int64_t>(H);
            if (m == 1) {
                visit({}, first);
            } else {
                for_each_point(m - 1, H,
                               [&](const std::vector<std::int64_t>& rest) { visit(rest, first); });
            }
        }
    };

    if (shards.size() == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool_threads;
        for (std::size_t s = 0; s < shards.size(); ++s) pool_threads.emplace_back(work, s);
        for (auto& t : pool_threads) t.join();
    }

    StarCount result;
    for (auto& p : partial) {
        result.count += p.count;
        result.zero_coordinate_count += p.zero_coordinate_count;
        result.witnesses.insert(result.witnesses.end(),
                                std::make_move_iterator(p.witnesses.begin()),
                                std::make_move_iterator(p.witnesses.end()));
    }
    return result;
}

GcdValueReport gcd_value_set(const PolySystem& F, std::uint64_t H, const CountOptions& opts) {
    const unsigned n = static_cast<unsigned>(F.size());
    const unsigned m = F.num_vars();
    checked_budget(m, H, 1, opts);

    GcdValueReport report;
    std::set<Integer> seen;
    std::vector<Integer> u(m);
    Integer g, v;
    for_each_point(m, H, [&](const std::vector<std::int64_t>& p) {
        for (unsigned j = 0; j < m; ++j) u[j] = static_cast<long>(p[j]);
        g = 0;
        bool unit = false;
        for (unsigned i = 0; i < n; ++i) {
            v = F.components[i].evaluate(u);
            if (v == 1 || v == -1) unit = true;
            g = gcd(g, v);
        }
        if (unit) ++report.unit_value_points;
        if (g == 0)
            ++report.all_zero_points;
        else
            seen.insert(g);
    });
    report.values.assign(seen.begin(), seen.end());

    if (m == 1) {
        bool coprime = true;
        for (std::size_t i = 0; i < n && coprime; ++i)
            for (std::size_t j = i + 1; j < n && coprime; ++j)
                coprime = univariate_gcd(F.components[i], F.components[j]).is_constant();
        report.pairwise_coprime = coprime;
    }
    return report;
}

std::vector<ShellStat> pplus_profile(const MPoly& f, std::uint64_t H, const CountOptions& opts) {
    if (f.is_constant()) throw std::domain_error("profile needs a nonconstant polynomial");
    const unsigned m = f.num_vars();
    checked_budget(m, H, 1, opts);

    std::vector<ShellStat> shells(H + 1);
    for (std::uint64_t t = 0; t <= H; ++t) shells[t].radius = t;

    std::map<Integer, Integer> pplus_cache;
    std::vector<Integer> u(m);
    for_each_point(m, H, [&](const std::vector<std::int64_t>& p) {
        std::int64_t radius = 0;
        for (std::int64_t x : p) radius = std::max(radius, std::abs(x));
        ShellStat& shell = shells[static_cast<std::size_t>(radius)];
        for (unsigned j = 0; j < m; ++j) u[j] = static_cast<long>(p[j]);
        Integer v = abs(f.evaluate(u));
        if (v <= 1) {
            ++shell.skipped;
            return;
        }
        auto it = pplus_cache.find(v);
        if (it == pplus_cache.end()) it = pplus_cache.emplace(v, largest_prime_factor(v)).first;
        if (!shell.min_largest_prime || it->second < *shell.min_largest_prime)
            shell.min_largest_prime = it->second;
    });
    return shells;
}

std::uint64_t hypersurface_count(const MPoly& f, const Integer& target, std::uint64_t H,
                                 const CountOptions& opts) {
    const unsigned m = f.num_vars();
    checked_budget(m, H, 1, opts);

    const bool machine = f.evaluate_bound(std::max<std::uint64_t>(H, 1)) < (Integer(1) << 62) &&
                         target.fits_slong_p();
    std::size_t side = 2 * H + 1;
    auto shards = make_shards(side, opts.threads);
    std::vector<std::uint64_t> partial(shards.size(), 0);

    auto work = [&](std::size_t shard) {
        std::uint64_t acc = 0;
        const std::int64_t want = machine ? target.get_si() : 0;
        std::vector<std::int64_t> pt(m);
        std::vector<Integer> u(m);
        for (std::size_t i0 = shards[shard].first; i0 < shards[shard].second; ++i0) {
            pt[0] = static_cast<std::int64_t>(i0) - static_cast<std::int64_t>(H);
            auto visit = [&](const std::vector<std::int64_t>& rest) {
                for (unsigned j = 1; j < m; ++j) pt[j] = rest[j - 1];
                if (machine) {
                    if (*f.evaluate_i64(pt) == want) ++acc;
                } else {
                    for (unsigned j = 0; j < m; ++j) u[j] = static_cast<long>(pt[j]);
                    if (f.evaluate(u) == target) ++acc;
                }
            };
            if (m == 1)
                visit({});
            else
                for_each_point(m - 1, H, visit);
        }
        partial[shard] = acc;
    };

    if (shards.size() == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool_threads;
        for (std::size_t s = 0; s < shards.size(); ++s) pool_threads.emplace_back(work, s);
        for (auto& t : pool_threads) t.join();
    }
    std::uint64_t total = 0;
    for (std::uint64_t p : partial) total += p;
    return total;
}

ScalingReport scaling_fit(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts,
                          double target_exponent) {
    ScalingReport report;
    report.target_exponent = target_exponent;
    for (const auto& [H, c] : counts)
        if (H >= 10 && c > 0) report.used.emplace_back(H, c);
    if (report.used.size() < 3)
        throw std::invalid_argument("scaling fit needs at least 3 points with H >= 10, count > 0");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(report.used.size());
    for (const auto& [H, c] : report.used) {
        double x = std::log(static_cast<double>(H)), y = std::log(static_cast<double>(c));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report.intercept = (sy - report.slope * sx) / n;
    report.slope_minus_target = report.slope - target_exponent;
    for (const auto& [H, c] : report.used) {
        double x = std::log(static_cast<double>(H)), y = std::log(static_cast<double>(c));
        report.residuals.push_back(y - (report.intercept + report.slope * x));
    }
    return report;
}

double v_md(unsigned m, unsigned d) {
    if (m == 0) throw std::invalid_argument("dimension must be positive");
    if (m == 1) return 1.0;
    if (d >= 4) return 2.0;
    if (d == 3) return 3.0 - 2.0 / std::sqrt(3.0);
    throw std::domain_error("saving exponent undefined for m > 1, d < 3");
}

double example13_ratio(unsigned n, std::uint64_t H, const CountOptions& opts) {
    if (n < 2) throw std::domain_error("ratio needs n >= 2");
    if (H < 1) throw std::domain_error("ratio needs H >= 1");
    PolySystem F = make_system(std::vector<MPoly>(n, MPoly::variable(1, 0)));
    std::uint64_t count = count_NF(F, H, opts);
    double main_term = static_cast<double>(n) * (n + 1) *
                       std::pow(2.0 * static_cast<double>(H), static_cast<double>(n - 1));
    return static_cast<double>(count) / main_term;
}

RelationProfile relation_size_profile(const PolySystem& F, std::uint64_t H,
                                      const CountOptions& opts) {
    if (H < 2) throw std::domain_error("relation profile needs H >= 2");
    CountOptions with_witnesses = opts;
    with_witnesses.collect_witnesses = true;
    StarCount star = count_NF_star(F, H, with_witnesses);

    RelationProfile profile;
    profile.dependent_points = star.count;
    profile.max_norm = 0;
    for (const MPoly& f : F.components)
        profile.growth_constant = std::max(
            profile.growth_constant, height_growth_constant(f, static_cast<double>(H)));

    std::vector<double> norms;
    norms.reserve(star.witnesses.size());
    for (const auto& w : star.witnesses) {
        Integer norm = 0;
        for (const Integer& k : w.relation)
            if (abs(k) > norm) norm = abs(k);
        if (norm > profile.max_norm) profile.max_norm = norm;
        norms.push_back(norm.get_d());
    }
    if (!norms.empty()) {
        std::sort(norms.begin(), norms.end());
        std::size_t mid = norms.size() / 2;
        profile.median_norm =
            norms.size() % 2 ? norms[mid] : (norms[mid - 1] + norms[mid]) / 2.0;
    }
    const double denom = std::pow(profile.growth_constant * std::log(static_cast<double>(H)),
                                  static_cast<double>(F.size() - 1));
    profile.fitted_A = denom > 0 ? profile.max_norm.get_d() / denom : 0.0;
    return profile;
}

}  // namespace multdep
