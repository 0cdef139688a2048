#include "clust/locality.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>

namespace clust {

// ---------------------------------------------------------------------------
// Digraph analysis

bool is_acyclic(const ExchangeMatrix& b) {
    const int n = b.size();
    std::vector<int> state(static_cast<size_t>(n), 0);  // 0 new, 1 active, 2 done
    for (int root = 0; root < n; ++root) {
        if (state[static_cast<size_t>(root)]) continue;
        std::vector<std::pair<int, int>> stack{{root, 0}};
        state[static_cast<size_t>(root)] = 1;
        while (!stack.empty()) {
            auto [v, next] = stack.back();
            if (next >= n) {
                state[static_cast<size_t>(v)] = 2;
                stack.pop_back();
                continue;
            }
            ++stack.back().second;
            // edge v -> w iff B[w][v] > 0
            if (b.at(next, v) > 0) {
                if (state[static_cast<size_t>(next)] == 1) return false;
                if (state[static_cast<size_t>(next)] == 0) {
                    state[static_cast<size_t>(next)] = 1;
                    stack.push_back({next, 0});
                }
            }
        }
    }
    return true;
}

std::optional<int> find_sink(const ExchangeMatrix& b) {
    for (int i = 0; i < b.size(); ++i) {
        bool sink = true;
        for (int j = 0; j < b.size(); ++j)
            if (b.at(j, i) > 0) {
                sink = false;
                break;
            }
        if (sink) return i;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Freezing

namespace {

// One slot, current numbering; bookkeeping stays in source numbering.
FrozenSeed freeze_one(const FrozenSeed& f, int slot) {
    const Seed& s = f.seed;
    const int n = s.rank();
    auto plain = s.cluster[static_cast<size_t>(slot)].as_plain_variable();
    if (!plain)
        throw InvalidSeed("cannot freeze slot " + std::to_string(slot + 1) +
                          ": its cluster entry is not a plain variable");
    const int v = *plain;

    Seed t;
    t.vars = std::make_shared<const VarTable>(
        s.vars->with_kind({v}, VarKind::FrozenCluster));
    std::vector<int> keep;
    for (int j = 0; j < n; ++j) {
        if (j == slot) continue;
        keep.push_back(j);
        t.cluster.push_back(s.cluster[static_cast<size_t>(j)]);
        t.coeffs.push_back(s.coeffs[static_cast<size_t>(j)] *
                           TropMonomial::variable(v, s.b.at(slot, j)));
    }
    t.b = s.b.submatrix(keep);
    validate_seed(t);

    FrozenSeed g;
    g.seed = std::move(t);
    g.frozen_slots = f.frozen_slots;
    g.frozen_vars = f.frozen_vars;
    const int source = f.kept_slots[static_cast<size_t>(slot)];
    auto pos = std::lower_bound(g.frozen_slots.begin(), g.frozen_slots.end(), source);
    g.frozen_vars.insert(g.frozen_vars.begin() + (pos - g.frozen_slots.begin()), v);
    g.frozen_slots.insert(pos, source);
    g.kept_slots = f.kept_slots;
    g.kept_slots.erase(g.kept_slots.begin() + slot);
    return g;
}

}  // namespace

FrozenSeed freeze(const Seed& s, const std::vector<int>& slots) {
    validate_seed(s);
    std::vector<int> order = slots;
    std::sort(order.begin(), order.end());
    if (std::adjacent_find(order.begin(), order.end()) != order.end())
        throw InvalidSeed("duplicate slot in the freezing set");
    for (int slot : order)
        if (slot < 0 || slot >= s.rank())
            throw InvalidSeed("freezing slot out of range");

    FrozenSeed f;
    f.seed = s;
    f.kept_slots.resize(static_cast<size_t>(s.rank()));
    std::iota(f.kept_slots.begin(), f.kept_slots.end(), 0);
    for (int source : order) {
        auto it = std::find(f.kept_slots.begin(), f.kept_slots.end(), source);
        f = freeze_one(f, static_cast<int>(it - f.kept_slots.begin()));
    }
    return f;
}

bool freezing_commutes(const Seed& s, int i, int j) {
    if (i == j) throw InvalidSeed("freezing and mutation indices must differ");
    FrozenSeed after_mutation = freeze(mutate(s, i), {j});
    FrozenSeed frozen_first = freeze(s, {j});
    auto it = std::find(frozen_first.kept_slots.begin(),
                        frozen_first.kept_slots.end(), i);
    Seed mutated_after =
        mutate(frozen_first.seed,
               static_cast<int>(it - frozen_first.kept_slots.begin()));
    return after_mutation.seed == mutated_after;
}

// ---------------------------------------------------------------------------
// Cover construction

namespace {

bool zero_matrix(const ExchangeMatrix& b) {
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            if (b.at(i, j) != 0) return false;
    return true;
}

}  // namespace

std::vector<CoverLeaf> isolated_cover(const Seed& s) {
    validate_seed(s);
    if (!is_acyclic(s.b))
        throw NotAcyclic("the exchange digraph has a directed cycle");

    std::vector<CoverLeaf> leaves;
    std::deque<std::vector<int>> work{{}};
    std::set<std::vector<int>> seen{{}};
    while (!work.empty()) {
        std::vector<int> S = work.front();
        work.pop_front();
        FrozenSeed f = freeze(s, S);
        if (zero_matrix(f.seed.b)) {
            CoverLeaf leaf{f, exchange_constants(f)};
            leaves.push_back(std::move(leaf));
            continue;
        }
        const ExchangeMatrix& b = f.seed.b;
        const int n = b.size();
        int sink = -1, feeder = -1;
        for (int i = 0; i < n && sink < 0; ++i) {
            bool is_sink = true;
            int jneg = -1;
            for (int j = 0; j < n; ++j) {
                if (b.at(j, i) > 0) {
                    is_sink = false;
                    break;
                }
                if (b.at(j, i) < 0 && jneg < 0) jneg = j;
            }
            if (is_sink && jneg >= 0) {
                sink = i;
                feeder = jneg;
            }
        }
        if (sink < 0)
            throw NotAcyclic("no sink with an incoming arrow in the reduced matrix");
        for (int pick : {sink, feeder}) {
            std::vector<int> extended = S;
            extended.push_back(f.kept_slots[static_cast<size_t>(pick)]);
            std::sort(extended.begin(), extended.end());
            if (seen.insert(extended).second) work.push_back(std::move(extended));
        }
    }
    return leaves;
}

// ---------------------------------------------------------------------------
// Exchange relations

bool exchange_identity_holds(const Seed& s, int sink) {
    validate_seed(s);
    if (sink < 0 || sink >= s.rank())
        throw InvalidSeed("sink index out of range");
    for (int j = 0; j < s.rank(); ++j)
        if (s.b.at(j, sink) > 0)
            throw InvalidSeed("slot " + std::to_string(sink + 1) + " is not a sink");

    const TropMonomial& y = s.coeffs[static_cast<size_t>(sink)];
    LaurentPoly exchanged = mutate_cluster(s, sink);
    LaurentPoly lhs = laurent_of(oplus(y, TropMonomial{}) * y.inverse()) *
                      exchanged * s.cluster[static_cast<size_t>(sink)];
    LaurentPoly incoming(1);
    for (int k = 0; k < s.rank(); ++k) {
        int e = s.b.at(k, sink);
        if (e < 0) incoming = incoming * s.cluster[static_cast<size_t>(k)].pow(-e);
    }
    lhs -= laurent_of(y.inverse()) * incoming;
    return lhs.is_one();
}

std::map<int, LaurentPoly> exchange_constants(const FrozenSeed& f) {
    if (!zero_matrix(f.seed.b))
        throw NotIsolated("the exchange matrix is not zero");
    std::map<int, LaurentPoly> out;
    for (int i = 0; i < f.seed.rank(); ++i) {
        const TropMonomial& y = f.seed.coeffs[static_cast<size_t>(i)];
        // (y+1)/(y (+) 1): the denominator is the numerator's monomial content
        out.emplace(i, exact_div(laurent_of(y) + LaurentPoly(1),
                                 laurent_of(oplus(y, TropMonomial{}))));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Membership

namespace {

// slot -> plain registry variable, for seeds whose cluster entries are
// registry variables (initial and frozen-from-initial seeds)
std::vector<int> plain_slot_vars(const Seed& s) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(s.rank()));
    for (int i = 0; i < s.rank(); ++i) {
        auto v = s.cluster[static_cast<size_t>(i)].as_plain_variable();
        if (!v)
            throw InvalidSeed(
                "membership requires a seed whose cluster entries are plain "
                "variables; use the algebra's initial seed");
        out.push_back(*v);
    }
    return out;
}

void check_element_vars(const LaurentPoly& a, const VarTable& vars) {
    for (const auto& [m, c] : a.terms())
        for (const auto& [v, e] : m.exponents())
            if (v < 0 || v >= vars.size())
                throw InvalidSeed("element uses an undeclared variable");
}

}  // namespace

MembershipVerdict isolated_membership(const FrozenSeed& f, const LaurentPoly& a) {
    const Seed& s = f.seed;
    check_element_vars(a, *s.vars);
    std::map<int, LaurentPoly> constants = exchange_constants(f);
    std::vector<int> slot_vars = plain_slot_vars(s);
    std::map<int, int> var_to_slot;
    for (int i = 0; i < s.rank(); ++i) var_to_slot[slot_vars[static_cast<size_t>(i)]] = i;

    // group the element's terms by their exponents on the mutable variables
    std::map<Monomial, LaurentPoly, MonomialDescending> groups;
    for (const auto& [m, c] : a.terms()) {
        ExponentMap mut, frozen;
        for (const auto& [v, e] : m.exponents()) {
            if (var_to_slot.count(v))
                mut[v] = e;
            else
                frozen[v] = e;
        }
        groups[Monomial::from_exponents(std::move(mut))].add_term(
            Monomial::from_exponents(std::move(frozen)), c);
    }

    MembershipVerdict verdict;
    verdict.member = true;
    for (const auto& [alpha, lambda] : groups) {
        LaurentPoly divisor(1);
        for (const auto& [v, e] : alpha.exponents())
            if (e < 0) divisor = divisor * constants.at(var_to_slot.at(v)).pow(-e);
        if (divisor.is_one()) continue;
        if (!divides(divisor, lambda)) {
            verdict.member = false;
            verdict.divisibility = DivisibilityWitness{
                f.frozen_slots, alpha.exponents(), lambda, divisor};
            break;
        }
    }
    return verdict;
}

MembershipVerdict cluster_algebra_membership(const Seed& s, const LaurentPoly& a) {
    check_element_vars(a, *s.vars);
    std::vector<CoverLeaf> leaves = isolated_cover(s);
    for (const CoverLeaf& leaf : leaves) {
        MembershipVerdict verdict = isolated_membership(leaf.frozen, a);
        if (!verdict.member) return verdict;
    }
    MembershipVerdict ok;
    ok.member = true;
    return ok;
}

// ---------------------------------------------------------------------------
// Upper membership

namespace {

// replace variables appearing in repl (their exponents must be nonnegative),
// pass everything else through
LaurentPoly substitute(const LaurentPoly& p,
                       const std::map<int, LaurentPoly>& repl) {
    LaurentPoly out;
    for (const auto& [m, c] : p.terms()) {
        LaurentPoly term{Int(c)};
        ExponentMap passthrough;
        for (const auto& [v, e] : m.exponents()) {
            auto it = repl.find(v);
            if (it == repl.end())
                passthrough[v] = e;
            else
                term = term * it->second.pow(e);
        }
        out += term * LaurentPoly::monomial(
                          Monomial::from_exponents(std::move(passthrough)));
    }
    return out;
}

struct ClusterView {
    std::vector<int> word;
    std::string key;
    std::map<int, LaurentPoly> expansions;  // initial variable id -> expression in this cluster
};

// For each node: rebase its seed on formal unit variables (reusing the
// initial ids), then run the node's word backwards.  The resulting cluster
// entries express the initial variables in the node's own cluster, because
// mutation is an involution and the exchange formulas only consume the
// entries, coefficients and matrix.
std::vector<ClusterView> cluster_views(const Seed& s, const ExchangeGraph& g,
                                       const std::vector<int>& slot_vars) {
    std::vector<std::pair<int, std::string>> order;
    order.reserve(g.nodes.size());
    for (const auto& [key, node] : g.nodes) order.emplace_back(node.depth, key);
    std::sort(order.begin(), order.end());

    std::vector<ClusterView> views;
    views.reserve(order.size());
    for (const auto& [depth, key] : order) {
        const ExchangeGraph::Node& node = g.nodes.at(key);
        Seed base;
        base.vars = s.vars;
        for (int v : slot_vars) base.cluster.push_back(LaurentPoly::variable(v));
        base.coeffs = node.reached.coeffs;
        base.b = node.reached.b;
        Seed expanded =
            mutate(base, std::vector<int>(node.word.rbegin(), node.word.rend()));
        ClusterView view{node.word, key, {}};
        for (size_t i = 0; i < slot_vars.size(); ++i)
            view.expansions.emplace(slot_vars[i], expanded.cluster[i]);
        views.push_back(std::move(view));
    }
    return views;
}

MembershipVerdict upper_check(const std::vector<ClusterView>& views, bool closed,
                              const LaurentPoly& a,
                              const std::vector<int>& slot_vars) {
    // clear the element's mutable denominators once
    ExponentMap shift;
    for (int v : slot_vars) {
        int mn = 0;
        for (const auto& [m, c] : a.terms()) mn = std::min(mn, m.exponent(v));
        if (mn < 0) shift[v] = -mn;
    }
    LaurentPoly ahat =
        a * LaurentPoly::monomial(Monomial::from_exponents(shift));

    MembershipVerdict verdict;
    verdict.member = true;
    verdict.exhaustive = closed;
    for (const ClusterView& view : views) {
        LaurentPoly numerator = substitute(ahat, view.expansions);
        LaurentPoly denominator(1);
        for (const auto& [v, e] : shift)
            denominator = denominator * view.expansions.at(v).pow(e);
        if (!divides(denominator, numerator)) {
            verdict.member = false;
            verdict.cluster = ClusterWitness{view.word, view.key};
            break;
        }
    }
    return verdict;
}

}  // namespace

MembershipVerdict upper_membership(const Seed& s, const LaurentPoly& a,
                                   int max_depth, int max_seeds) {
    validate_seed(s);
    check_element_vars(a, *s.vars);
    std::vector<int> slot_vars = plain_slot_vars(s);
    ExchangeGraph g = explore_exchange_graph(s, max_depth, max_seeds);
    std::vector<ClusterView> views = cluster_views(s, g, slot_vars);
    return upper_check(views, g.closed, a, slot_vars);
}

// ---------------------------------------------------------------------------
// Differential testing

DifferentialReport au_differential(const Seed& s, int samples, uint64_t rng_seed) {
    validate_seed(s);
    std::vector<int> slot_vars = plain_slot_vars(s);
    ExchangeGraph g = explore_exchange_graph(s);
    if (!g.closed)
        throw NotFiniteType("the exchange graph did not close within the default bounds");
    std::vector<ClusterView> views = cluster_views(s, g, slot_vars);

    std::map<std::string, LaurentPoly> inventory;
    for (const auto& [key, node] : g.nodes)
        for (const LaurentPoly& e : node.seed.cluster)
            inventory.emplace(to_string(e, *s.vars), e);
    std::vector<LaurentPoly> pool;
    pool.reserve(inventory.size());
    for (const auto& [text, p] : inventory) pool.push_back(p);

    std::mt19937_64 rng(rng_seed);
    auto draw = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    DifferentialReport report;
    report.samples = samples;
    for (int t = 0; t < samples; ++t) {
        LaurentPoly a;
        int pieces = draw(1, 3);
        for (int p = 0; p < pieces; ++p) {
            LaurentPoly prod{Int(draw(-3, 3))};
            int factors = draw(1, 3);
            for (int f = 0; f < factors; ++f)
                prod = prod * pool[static_cast<size_t>(
                           draw(0, static_cast<int>(pool.size()) - 1))];
            a += prod;
        }
        if (draw(0, 99) >= 65) {
            // push some mass outside the algebra
            ExponentMap e;
            for (int v = 0; v < s.vars->size(); ++v) {
                int x = draw(-2, 2);
                if (x != 0) e[v] = x;
            }
            a += LaurentPoly::monomial(Monomial::from_exponents(std::move(e)),
                                       Int(draw(1, 3)));
        }
        bool in_a = cluster_algebra_membership(s, a).member;
        bool in_u = upper_check(views, true, a, slot_vars).member;
        if (in_a == in_u)
            ++report.agreements;
        else
            report.disagreeing.push_back(to_string(a, *s.vars));
    }
    return report;
}

}  // namespace clust
