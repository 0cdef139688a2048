// Shared helpers for the test binaries: seeded rng wrappers and random
// generators for monomials and polynomials.  Every test that draws random
// data seeds its own rng so failures replay deterministically.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "clust/algebra.hpp"
#include "clust/seed.hpp"

namespace testsupport {

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

inline int rand_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline clust::VarTable standard_vars(int n) {
    clust::VarTable t;
    for (int i = 1; i <= n; ++i)
        t.add("x" + std::to_string(i), clust::VarKind::Mutable);
    return t;
}

inline clust::Monomial random_monomial(std::mt19937_64& rng, int nvars,
                                       int max_abs_exp) {
    clust::ExponentMap e;
    for (int v = 0; v < nvars; ++v) {
        int x = rand_int(rng, -max_abs_exp, max_abs_exp);
        if (x != 0) e[v] = x;
    }
    return clust::Monomial::from_exponents(std::move(e));
}

inline clust::LaurentPoly random_poly(std::mt19937_64& rng, int nvars,
                                      int max_terms, int max_abs_exp,
                                      int max_abs_coeff) {
    clust::LaurentPoly p;
    int terms = rand_int(rng, 0, max_terms);
    for (int t = 0; t < terms; ++t) {
        int c = rand_int(rng, -max_abs_coeff, max_abs_coeff);
        p.add_term(random_monomial(rng, nvars, max_abs_exp), clust::Int(c));
    }
    return p;
}

inline clust::LaurentPoly random_nonzero_poly(std::mt19937_64& rng, int nvars,
                                              int max_terms, int max_abs_exp,
                                              int max_abs_coeff) {
    for (;;) {
        clust::LaurentPoly p =
            random_poly(rng, nvars, max_terms, max_abs_exp, max_abs_coeff);
        if (!p.is_zero()) return p;
    }
}

inline clust::TropMonomial random_trop(std::mt19937_64& rng, int nvars,
                                       int max_abs_exp) {
    return clust::TropMonomial::from_exponents(
        random_monomial(rng, nvars, max_abs_exp).exponents());
}

// Skew-symmetrizable by construction: with positive d_i and integers c_ij,
// the entries B_ij = c_ij*d_j, B_ji = -c_ij*d_i satisfy d_i*B_ij = -d_j*B_ji.
// When acyclic is set, the sign of c_ij follows a random topological order,
// so the digraph (edge i->j iff B_ji > 0) has no directed cycle.
inline clust::ExchangeMatrix random_exchange_matrix(std::mt19937_64& rng, int n,
                                                    bool acyclic,
                                                    int max_c = 2,
                                                    int max_d = 3) {
    std::vector<int> d(static_cast<size_t>(n));
    for (int& x : d) x = rand_int(rng, 1, max_d);
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> pos(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;

    std::vector<std::vector<int>> rows(static_cast<size_t>(n),
                                       std::vector<int>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int c = rand_int(rng, -max_c, max_c);
            if (acyclic && c != 0) {
                // orient the exchange-digraph edge from the earlier slot in
                // the topological order to the later one: need B_ji > 0 when
                // i precedes j, so c = B_ij / d_j must be negative then
                bool i_first = pos[static_cast<size_t>(i)] < pos[static_cast<size_t>(j)];
                c = i_first ? -std::abs(c) : std::abs(c);
            }
            rows[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                c * d[static_cast<size_t>(j)];
            rows[static_cast<size_t>(j)][static_cast<size_t>(i)] =
                -c * d[static_cast<size_t>(i)];
        }
    return clust::ExchangeMatrix(std::move(rows));
}

// Disambiguates brace-heavy call sites like matrix({{0}}).
inline clust::ExchangeMatrix matrix(std::vector<std::vector<int>> rows) {
    return clust::ExchangeMatrix(std::move(rows));
}

inline clust::VarTablePtr make_registry(int n, int m) {
    auto t = std::make_shared<clust::VarTable>();
    for (int i = 1; i <= n; ++i)
        t->add("x" + std::to_string(i), clust::VarKind::Mutable);
    for (int i = 1; i <= m; ++i)
        t->add("u" + std::to_string(i), clust::VarKind::FrozenCoeff);
    return t;
}

// Random valid seed: n mutable variables, m frozen-coefficient generators,
// random tropical coefficients, random skew-symmetrizable matrix.
inline clust::Seed random_seed(std::mt19937_64& rng, int n, int m, bool acyclic,
                               int max_exp = 2) {
    clust::VarTablePtr vars = make_registry(n, m);
    clust::Seed s =
        clust::Seed::initial(vars, random_exchange_matrix(rng, n, acyclic));
    for (auto& y : s.coeffs) {
        clust::ExponentMap e;
        for (int u = n; u < n + m; ++u) {
            int x = rand_int(rng, -max_exp, max_exp);
            if (x != 0) e[u] = x;
        }
        y = clust::TropMonomial::from_exponents(std::move(e));
    }
    return s;
}

inline clust::Seed a2_seed() {
    return clust::Seed::initial(make_registry(2, 0),
                                clust::ExchangeMatrix({{0, -1}, {1, 0}}));
}

inline clust::Seed a3_seed() {
    return clust::Seed::initial(
        make_registry(3, 0),
        clust::ExchangeMatrix({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}));
}

inline clust::Seed kronecker_seed() {
    return clust::Seed::initial(make_registry(2, 0),
                                clust::ExchangeMatrix({{0, 2}, {-2, 0}}));
}

struct OracleExploration {
    int node_count = 0;
    bool closed = false;
    std::set<std::string> variables;
};

// Independent cross-check for closure counts: a plain breadth-first sweep
// that identifies a node by the sorted list of its serialized cluster
// entries, with no use of the library's canonical form.  Sound on
// trivial-coefficient seeds at this scale, where a cluster determines its
// seed.
inline OracleExploration oracle_explore(const clust::Seed& s, int max_depth) {
    auto cluster_key = [](const clust::Seed& t) {
        std::vector<std::string> entries;
        for (const auto& e : t.cluster)
            entries.push_back(clust::to_string(e, *t.vars));
        std::sort(entries.begin(), entries.end());
        std::string key;
        for (const auto& e : entries) {
            key += e;
            key += "|";
        }
        return key;
    };

    OracleExploration out;
    std::set<std::string> seen;
    std::map<std::string, clust::Seed> frontier;
    seen.insert(cluster_key(s));
    frontier.emplace(cluster_key(s), s);
    for (const auto& e : s.cluster)
        out.variables.insert(clust::to_string(e, *s.vars));

    int depth = 0;
    bool cut = false;
    while (!frontier.empty()) {
        if (depth >= max_depth) {
            cut = true;
            break;
        }
        std::map<std::string, clust::Seed> next;
        for (const auto& [key, t] : frontier)
            for (int k = 0; k < t.rank(); ++k) {
                clust::Seed m = clust::mutate(t, k);
                for (const auto& e : m.cluster)
                    out.variables.insert(clust::to_string(e, *m.vars));
                std::string mk = cluster_key(m);
                if (seen.insert(mk).second) next.emplace(std::move(mk), std::move(m));
            }
        frontier = std::move(next);
        ++depth;
    }
    out.node_count = static_cast<int>(seen.size());
    out.closed = !cut;
    return out;
}

}  // namespace testsupport
