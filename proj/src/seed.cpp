#include "clust/seed.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace clust {

// ---------------------------------------------------------------------------
// Symmetrizer

std::vector<int> find_symmetrizer(const std::vector<std::vector<int>>& rows) {
    const int n = static_cast<int>(rows.size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n)
            throw NotSkewSymmetrizable("matrix is not square");
    for (int i = 0; i < n; ++i) {
        if (rows[i][i] != 0)
            throw NotSkewSymmetrizable("nonzero diagonal entry at index " +
                                       std::to_string(i + 1));
        for (int j = i + 1; j < n; ++j) {
            int a = rows[i][j], b = rows[j][i];
            bool opposite = (a == 0 && b == 0) || (a > 0 && b < 0) || (a < 0 && b > 0);
            if (!opposite)
                throw NotSkewSymmetrizable("entries (" + std::to_string(i + 1) +
                                           "," + std::to_string(j + 1) +
                                           ") violate the sign condition");
        }
    }

    // d_i * B_ij = -d_j * B_ji forces the ratio d_j/d_i = |B_ij|/|B_ji| along
    // every nonzero entry; propagate ratios per connected component, check
    // cycles for consistency, then clear denominators minimally.
    std::vector<mpq_class> ratio(static_cast<size_t>(n), 0);
    std::vector<int> d(static_cast<size_t>(n), 0);
    for (int root = 0; root < n; ++root) {
        if (ratio[static_cast<size_t>(root)] != 0) continue;
        std::vector<int> component{root};
        ratio[static_cast<size_t>(root)] = 1;
        for (size_t qi = 0; qi < component.size(); ++qi) {
            int i = component[qi];
            for (int j = 0; j < n; ++j) {
                if (rows[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0) continue;
                mpq_class step(std::abs(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]),
                               std::abs(rows[static_cast<size_t>(j)][static_cast<size_t>(i)]));
                step.canonicalize();
                mpq_class expected = ratio[static_cast<size_t>(i)] * step;
                if (ratio[static_cast<size_t>(j)] == 0) {
                    ratio[static_cast<size_t>(j)] = expected;
                    component.push_back(j);
                } else if (ratio[static_cast<size_t>(j)] != expected) {
                    throw NotSkewSymmetrizable("inconsistent ratios around a cycle");
                }
            }
        }
        mpz_class lcm_den = 1;
        for (int i : component)
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
                    ratio[static_cast<size_t>(i)].get_den().get_mpz_t());
        mpz_class gcd_all = 0;
        std::vector<mpz_class> scaled;
        scaled.reserve(component.size());
        for (int i : component) {
            mpz_class v = ratio[static_cast<size_t>(i)].get_num() *
                          (lcm_den / ratio[static_cast<size_t>(i)].get_den());
            mpz_gcd(gcd_all.get_mpz_t(), gcd_all.get_mpz_t(), v.get_mpz_t());
            scaled.push_back(std::move(v));
        }
        for (size_t t = 0; t < component.size(); ++t) {
            mpz_class v = scaled[t] / gcd_all;
            if (!v.fits_sint_p())
                throw NotSkewSymmetrizable("symmetrizer entry exceeds int range");
            d[static_cast<size_t>(component[t])] = static_cast<int>(v.get_si());
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// ExchangeMatrix

ExchangeMatrix::ExchangeMatrix(std::vector<std::vector<int>> rows)
    : rows_(std::move(rows)), d_(find_symmetrizer(rows_)) {}

ExchangeMatrix ExchangeMatrix::mutated(int k) const {
    const int n = size();
    if (k < 0 || k >= n) throw InvalidSeed("mutation index out of range");
    std::vector<std::vector<int>> out = rows_;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k) {
                out[static_cast<size_t>(i)][static_cast<size_t>(j)] = -at(i, j);
            } else {
                int t = std::abs(at(i, k)) * at(k, j) + at(i, k) * std::abs(at(k, j));
                if (t % 2 != 0)
                    throw Error("internal: odd increment in matrix mutation");
                out[static_cast<size_t>(i)][static_cast<size_t>(j)] = at(i, j) + t / 2;
            }
        }
    return ExchangeMatrix(std::move(out));
}

ExchangeMatrix ExchangeMatrix::submatrix(const std::vector<int>& keep) const {
    std::vector<std::vector<int>> out;
    out.reserve(keep.size());
    for (int i : keep) {
        if (i < 0 || i >= size()) throw InvalidSeed("submatrix index out of range");
        std::vector<int> row;
        row.reserve(keep.size());
        for (int j : keep) row.push_back(at(i, j));
        out.push_back(std::move(row));
    }
    return ExchangeMatrix(std::move(out));
}

// ---------------------------------------------------------------------------
// Seed

Seed Seed::initial(VarTablePtr vars, ExchangeMatrix b) {
    if (!vars) throw InvalidSeed("seed has no variable registry");
    Seed s;
    s.vars = std::move(vars);
    for (int v : s.vars->indices(VarKind::Mutable))
        s.cluster.push_back(LaurentPoly::variable(v));
    s.coeffs.assign(s.cluster.size(), TropMonomial{});
    s.b = std::move(b);
    validate_seed(s);
    return s;
}

bool Seed::operator==(const Seed& o) const {
    if (static_cast<bool>(vars) != static_cast<bool>(o.vars)) return false;
    if (vars && !(*vars == *o.vars)) return false;
    return cluster == o.cluster && coeffs == o.coeffs && b == o.b;
}

void validate_seed(const Seed& s) {
    if (!s.vars) throw InvalidSeed("seed has no variable registry");
    const int n = s.rank();
    if (static_cast<int>(s.coeffs.size()) != n)
        throw InvalidSeed("cluster and coefficient tuples differ in length");
    if (s.b.size() != n)
        throw InvalidSeed("exchange matrix size does not match the cluster");
    if (static_cast<int>(s.vars->indices(VarKind::Mutable).size()) != n)
        throw InvalidSeed("registry mutable-variable count does not match the cluster");
    for (int i = 0; i < n; ++i) {
        if (s.cluster[static_cast<size_t>(i)].is_zero())
            throw InvalidSeed("cluster entry " + std::to_string(i + 1) + " is zero");
        for (const auto& [m, c] : s.cluster[static_cast<size_t>(i)].terms())
            for (const auto& [v, e] : m.exponents())
                if (v < 0 || v >= s.vars->size())
                    throw InvalidSeed("cluster entry " + std::to_string(i + 1) +
                                      " uses an undeclared variable");
        for (const auto& [v, e] : s.coeffs[static_cast<size_t>(i)].monomial().exponents()) {
            if (v < 0 || v >= s.vars->size())
                throw InvalidSeed("coefficient " + std::to_string(i + 1) +
                                  " uses an undeclared variable");
            if (!is_frozen((*s.vars)[v].kind))
                throw InvalidSeed("coefficient " + std::to_string(i + 1) +
                                  " uses the mutable variable " + (*s.vars)[v].name);
        }
    }
}

// ---------------------------------------------------------------------------
// Mutation

LaurentPoly mutate_cluster(const Seed& s, int k) {
    const int n = s.rank();
    if (k < 0 || k >= n) throw InvalidSeed("mutation index out of range");
    const TropMonomial& y = s.coeffs[static_cast<size_t>(k)];
    LaurentPoly pos = laurent_of(y);
    LaurentPoly neg(1);
    for (int j = 0; j < n; ++j) {
        int e = s.b.at(j, k);
        if (e > 0)
            pos = pos * s.cluster[static_cast<size_t>(j)].pow(e);
        else if (e < 0)
            neg = neg * s.cluster[static_cast<size_t>(j)].pow(-e);
    }
    LaurentPoly num = pos + neg;
    LaurentPoly den = laurent_of(oplus(y, TropMonomial{})) * s.cluster[static_cast<size_t>(k)];
    try {
        return exact_div(num, den);
    } catch (const NotDivisible&) {
        throw LaurentViolation("exchange at slot " + std::to_string(k + 1) +
                               " did not divide exactly");
    }
}

std::vector<TropMonomial> mutate_coefficients(const std::vector<TropMonomial>& y,
                                              const ExchangeMatrix& b, int k) {
    const int n = static_cast<int>(y.size());
    if (b.size() != n) throw InvalidSeed("coefficient tuple does not match the matrix");
    if (k < 0 || k >= n) throw InvalidSeed("mutation index out of range");
    const TropMonomial& yk = y[static_cast<size_t>(k)];
    const TropMonomial yk1 = oplus(yk, TropMonomial{});
    std::vector<TropMonomial> out = y;
    for (int j = 0; j < n; ++j) {
        if (j == k) {
            out[static_cast<size_t>(j)] = yk.inverse();
            continue;
        }
        int e = b.at(k, j);
        TropMonomial t = y[static_cast<size_t>(j)];
        if (e > 0) t *= yk.pow(e);
        t *= yk1.pow(-e);
        out[static_cast<size_t>(j)] = t;
    }
    return out;
}

Seed mutate(const Seed& s, int k) {
    Seed t = s;
    t.cluster[static_cast<size_t>(k)] = mutate_cluster(s, k);
    t.coeffs = mutate_coefficients(s.coeffs, s.b, k);
    t.b = s.b.mutated(k);
    return t;
}

Seed mutate(const Seed& s, const std::vector<int>& word) {
    Seed t = s;
    for (int k : word) t = mutate(t, k);
    return t;
}

Seed permute(const Seed& s, const std::vector<int>& sigma) {
    const int n = s.rank();
    if (static_cast<int>(sigma.size()) != n)
        throw InvalidSeed("permutation length does not match the rank");
    std::vector<bool> hit(static_cast<size_t>(n), false);
    for (int v : sigma) {
        if (v < 0 || v >= n || hit[static_cast<size_t>(v)])
            throw InvalidSeed("not a permutation of the slots");
        hit[static_cast<size_t>(v)] = true;
    }
    Seed t;
    t.vars = s.vars;
    t.cluster.reserve(static_cast<size_t>(n));
    t.coeffs.reserve(static_cast<size_t>(n));
    std::vector<std::vector<int>> rows(static_cast<size_t>(n),
                                       std::vector<int>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
        t.cluster.push_back(s.cluster[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
        t.coeffs.push_back(s.coeffs[static_cast<size_t>(sigma[static_cast<size_t>(i)])]);
        for (int j = 0; j < n; ++j)
            rows[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                s.b.at(sigma[static_cast<size_t>(i)], sigma[static_cast<size_t>(j)]);
    }
    t.b = ExchangeMatrix(std::move(rows));
    return t;
}

CanonicalSeed canonical_form(const Seed& s) {
    const int n = s.rank();
    std::vector<std::tuple<std::string, std::string, std::vector<int>, int>> keys;
    keys.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int> col;
        col.reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) col.push_back(s.b.at(j, i));
        keys.emplace_back(to_string(s.cluster[static_cast<size_t>(i)], *s.vars),
                          to_string(s.coeffs[static_cast<size_t>(i)], *s.vars),
                          std::move(col), i);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<int> sigma;
    sigma.reserve(static_cast<size_t>(n));
    for (const auto& k : keys) sigma.push_back(std::get<3>(k));
    CanonicalSeed out{permute(s, sigma), {}};
    out.key = to_string(out.seed);
    return out;
}

// ---------------------------------------------------------------------------
// Text forms

std::string to_string(const ExchangeMatrix& b) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < b.size(); ++i) {
        if (i) os << ", ";
        os << "[";
        for (int j = 0; j < b.size(); ++j) {
            if (j) os << ", ";
            os << b.at(i, j);
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string to_string(const Seed& s) {
    std::ostringstream os;
    for (int i = 0; i < s.rank(); ++i)
        os << "x[" << i + 1 << "] = "
           << to_string(s.cluster[static_cast<size_t>(i)], *s.vars) << "\n";
    for (int i = 0; i < s.rank(); ++i)
        os << "y[" << i + 1 << "] = "
           << to_string(s.coeffs[static_cast<size_t>(i)], *s.vars) << "\n";
    os << "B = " << to_string(s.b);
    return os.str();
}

}  // namespace clust
