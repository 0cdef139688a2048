#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "clust/locality.hpp"
#include "support.hpp"

using namespace clust;
using namespace testsupport;

namespace {

LaurentPoly lp_mono(ExponentMap e, Int c = 1) {
    return LaurentPoly::monomial(Monomial::from_exponents(std::move(e)), c);
}

ExchangeMatrix markov_matrix() {
    return matrix({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
}

Seed rank1_seed() {
    return Seed::initial(make_registry(1, 0), matrix({{0}}));
}

// every variable of the element stays within declared exponent bounds
LaurentPoly random_element(std::mt19937_64& rng, const Seed& s) {
    LaurentPoly a;
    int terms = rand_int(rng, 1, 4);
    for (int t = 0; t < terms; ++t) {
        ExponentMap e;
        for (int v = 0; v < s.vars->size(); ++v) {
            int x = rand_int(rng, -2, 2);
            if (x != 0) e[v] = x;
        }
        a += lp_mono(std::move(e), Int(rand_int(rng, -3, 3)));
    }
    return a;
}

}  // namespace

// ======================== digraph analysis ========================

TEST_CASE("acyclicity matches the mutation digraph") {
    CHECK(is_acyclic(a2_seed().b));
    CHECK(is_acyclic(a3_seed().b));
    CHECK(is_acyclic(kronecker_seed().b));
    CHECK(is_acyclic(matrix({{0, 0}, {0, 0}})));
    CHECK(is_acyclic(ExchangeMatrix{}));
    CHECK_FALSE(is_acyclic(markov_matrix()));
}

TEST_CASE("sink search returns the smallest all-incoming slot") {
    CHECK(find_sink(a2_seed().b) == 1);
    CHECK(find_sink(a3_seed().b) == 0);
    CHECK(find_sink(kronecker_seed().b) == 0);
    CHECK(find_sink(matrix({{0, 0}, {0, 0}})) == 0);
    CHECK_FALSE(find_sink(markov_matrix()).has_value());
    CHECK_FALSE(find_sink(ExchangeMatrix{}).has_value());
}

TEST_CASE("every acyclic random matrix has a sink") {
    auto rng = make_rng(4401);
    for (int iter = 0; iter < 100; ++iter) {
        int n = rand_int(rng, 1, 5);
        ExchangeMatrix b = random_exchange_matrix(rng, n, true);
        REQUIRE(is_acyclic(b));
        auto sink = find_sink(b);
        REQUIRE(sink.has_value());
        for (int j = 0; j < n; ++j) CHECK(b.at(j, *sink) <= 0);
    }
}

// ======================== freezing ========================

TEST_CASE("freezing the second seat of the two-seat chain") {
    Seed s = a2_seed();
    FrozenSeed f = freeze(s, {1});

    CHECK(f.frozen_slots == std::vector<int>{1});
    CHECK(f.frozen_vars == std::vector<int>{1});
    CHECK(f.kept_slots == std::vector<int>{0});
    REQUIRE(f.seed.rank() == 1);
    CHECK(f.seed.b.at(0, 0) == 0);
    CHECK(f.seed.cluster[0] == LaurentPoly::variable(0));
    CHECK(to_string(f.seed.coeffs[0], *f.seed.vars) == "x2");
    CHECK((*f.seed.vars)[1].kind == VarKind::FrozenCluster);
    CHECK((*f.seed.vars)[0].kind == VarKind::Mutable);
    // the source registry is untouched
    CHECK((*s.vars)[1].kind == VarKind::Mutable);

    // the frozen algebra is generated by x1 and (x2+1)/x1
    LaurentPoly other = mutate(f.seed, 0).cluster[0];
    CHECK(to_string(other, *f.seed.vars) == "x1^-1*x2 + x1^-1");
    ExchangeGraph g = explore_exchange_graph(f.seed);
    CHECK(g.closed);
    CHECK(g.nodes.size() == 2);
    CHECK(collect_cluster_variables(g) ==
          std::vector<std::string>{"x1", "x1^-1*x2 + x1^-1"});
}

TEST_CASE("freezing the first seat of the two-seat chain") {
    FrozenSeed f = freeze(a2_seed(), {0});

    CHECK(f.frozen_slots == std::vector<int>{0});
    CHECK(f.kept_slots == std::vector<int>{1});
    REQUIRE(f.seed.rank() == 1);
    CHECK(to_string(f.seed.coeffs[0], *f.seed.vars) == "x1^-1");

    // generated by x2 and (x1+1)/x2
    ExchangeGraph g = explore_exchange_graph(f.seed);
    CHECK(g.closed);
    CHECK(collect_cluster_variables(g) ==
          std::vector<std::string>{"x1*x2^-1 + x2^-1", "x2"});
}

TEST_CASE("freezing everything leaves a rank-zero seed") {
    FrozenSeed f = freeze(a2_seed(), {0, 1});
    CHECK(f.seed.rank() == 0);
    CHECK(f.seed.b.size() == 0);
    CHECK(f.kept_slots.empty());
    CHECK(f.frozen_slots == std::vector<int>{0, 1});
    CHECK(f.frozen_vars == std::vector<int>{0, 1});
    CHECK((*f.seed.vars)[0].kind == VarKind::FrozenCluster);
    CHECK((*f.seed.vars)[1].kind == VarKind::FrozenCluster);
    ExchangeGraph g = explore_exchange_graph(f.seed);
    CHECK(g.closed);
    CHECK(g.nodes.size() == 1);
}

TEST_CASE("freezing rejects bad slot sets and non-variable entries") {
    Seed s = a2_seed();
    CHECK_THROWS_AS(freeze(s, {2}), InvalidSeed);
    CHECK_THROWS_AS(freeze(s, {-1}), InvalidSeed);
    CHECK_THROWS_AS(freeze(s, {0, 0}), InvalidSeed);
    // after mutating at 0, slot 0 holds a two-term entry
    CHECK_THROWS_AS(freeze(mutate(s, 0), {0}), InvalidSeed);
    // slot 1 is still a plain variable there
    CHECK_NOTHROW(freeze(mutate(s, 0), {1}));
}

TEST_CASE("iterated freezing is order independent") {
    auto rng = make_rng(4402);
    for (int iter = 0; iter < 30; ++iter) {
        Seed s = random_seed(rng, 4, 2, true);
        int i = rand_int(rng, 0, 3);
        int j = rand_int(rng, 0, 3);
        if (i == j) continue;
        FrozenSeed both = freeze(s, {j, i});
        FrozenSeed first = freeze(s, {j});
        auto pos = std::find(first.kept_slots.begin(), first.kept_slots.end(), i);
        REQUIRE(pos != first.kept_slots.end());
        FrozenSeed second =
            freeze(first.seed, {static_cast<int>(pos - first.kept_slots.begin())});
        CHECK(both.seed == second.seed);

        std::vector<int> expected_frozen{i, j};
        std::sort(expected_frozen.begin(), expected_frozen.end());
        CHECK(both.frozen_slots == expected_frozen);
        CHECK(both.frozen_vars == expected_frozen);
    }
}

TEST_CASE("freezing commutes with mutation elsewhere") {
    CHECK(freezing_commutes(a2_seed(), 0, 1));
    CHECK(freezing_commutes(a2_seed(), 1, 0));
    CHECK(freezing_commutes(a3_seed(), 1, 2));
    CHECK_THROWS_AS(freezing_commutes(a2_seed(), 1, 1), InvalidSeed);

    auto rng = make_rng(4403);
    for (int iter = 0; iter < 40; ++iter) {
        Seed s = random_seed(rng, 4, 2, true);
        int i = rand_int(rng, 0, 3);
        int j = rand_int(rng, 0, 3);
        if (i == j) j = (j + 1) % 4;
        CHECK(freezing_commutes(s, i, j));
    }
}

TEST_CASE("freezing preserves acyclicity") {
    auto rng = make_rng(4404);
    for (int iter = 0; iter < 60; ++iter) {
        int n = rand_int(rng, 2, 5);
        Seed s = random_seed(rng, n, 1, true);
        std::vector<int> slots;
        for (int v = 0; v < n; ++v)
            if (rand_int(rng, 0, 1)) slots.push_back(v);
        CHECK(is_acyclic(freeze(s, slots).seed.b));
    }
}

// ======================== covers ========================

TEST_CASE("the two-seat cover splits at its sink") {
    std::vector<CoverLeaf> leaves = isolated_cover(a2_seed());
    REQUIRE(leaves.size() == 2);
    CHECK(leaves[0].frozen.frozen_slots == std::vector<int>{1});
    CHECK(leaves[1].frozen.frozen_slots == std::vector<int>{0});
    for (const CoverLeaf& leaf : leaves) {
        CHECK(leaf.frozen.seed.rank() == 1);
        CHECK(is_acyclic(leaf.frozen.seed.b));
        CHECK(leaf.frozen.seed.b.at(0, 0) == 0);
    }
    CHECK(leaves[0].exchange_constants.at(0) ==
          LaurentPoly::variable(1) + LaurentPoly(1));
    CHECK(leaves[1].exchange_constants.at(0) ==
          LaurentPoly::variable(0) + LaurentPoly(1));
}

TEST_CASE("the three-seat cover has three leaves") {
    std::vector<CoverLeaf> leaves = isolated_cover(a3_seed());
    REQUIRE(leaves.size() == 3);
    CHECK(leaves[0].frozen.frozen_slots == std::vector<int>{1});
    CHECK(leaves[1].frozen.frozen_slots == std::vector<int>{0, 1});
    CHECK(leaves[2].frozen.frozen_slots == std::vector<int>{0, 2});
    for (const CoverLeaf& leaf : leaves) {
        for (int i = 0; i < leaf.frozen.seed.rank(); ++i) {
            for (int j = 0; j < leaf.frozen.seed.rank(); ++j)
                CHECK(leaf.frozen.seed.b.at(i, j) == 0);
            CHECK(leaf.exchange_constants.count(i) == 1);
        }
    }
}

TEST_CASE("an isolated seed is its own cover") {
    std::vector<CoverLeaf> leaves = isolated_cover(rank1_seed());
    REQUIRE(leaves.size() == 1);
    CHECK(leaves[0].frozen.frozen_slots.empty());
    CHECK(leaves[0].exchange_constants.at(0) == LaurentPoly(2));

    Seed empty;
    empty.vars = std::make_shared<const VarTable>();
    CHECK(isolated_cover(empty).size() == 1);
}

TEST_CASE("cyclic seeds have no cover here") {
    Seed s = Seed::initial(make_registry(3, 0), markov_matrix());
    CHECK_THROWS_AS(isolated_cover(s), NotAcyclic);
}

TEST_CASE("random acyclic covers produce only isolated acyclic leaves") {
    auto rng = make_rng(4405);
    for (int iter = 0; iter < 25; ++iter) {
        int n = rand_int(rng, 1, 4);
        Seed s = random_seed(rng, n, 1, true);
        std::vector<CoverLeaf> leaves = isolated_cover(s);
        REQUIRE(!leaves.empty());
        for (const CoverLeaf& leaf : leaves) {
            const ExchangeMatrix& b = leaf.frozen.seed.b;
            for (int i = 0; i < b.size(); ++i)
                for (int j = 0; j < b.size(); ++j) CHECK(b.at(i, j) == 0);
            CHECK(static_cast<int>(leaf.exchange_constants.size()) ==
                  leaf.frozen.seed.rank());
        }
    }
}

// ======================== exchange relations ========================

TEST_CASE("sink exchange identity on the worked examples") {
    CHECK(exchange_identity_holds(a2_seed(), 1));
    CHECK(exchange_identity_holds(a3_seed(), 0));
    CHECK(exchange_identity_holds(rank1_seed(), 0));
    CHECK(exchange_identity_holds(kronecker_seed(), 0));
    // slot 1 of the two-seat chain has an outgoing arrow from slot 0's view
    CHECK_THROWS_AS(exchange_identity_holds(a2_seed(), 0), InvalidSeed);
    CHECK_THROWS_AS(exchange_identity_holds(a2_seed(), 5), InvalidSeed);
}

TEST_CASE("sink exchange identity on random tropical seeds") {
    auto rng = make_rng(4406);
    int sinks_checked = 0;
    for (int iter = 0; iter < 40; ++iter) {
        int n = rand_int(rng, 1, 4);
        Seed s = random_seed(rng, n, 2, true);
        for (int i = 0; i < n; ++i) {
            bool sink = true;
            for (int j = 0; j < n; ++j)
                if (s.b.at(j, i) > 0) sink = false;
            if (!sink) continue;
            CHECK(exchange_identity_holds(s, i));
            ++sinks_checked;
        }
    }
    CHECK(sinks_checked > 40);
}

TEST_CASE("exchange constants of isolated seeds") {
    // trivial coefficients: (1 + 1)/1
    FrozenSeed trivial = freeze(rank1_seed(), {});
    CHECK(exchange_constants(trivial).at(0) == LaurentPoly(2));

    // y = u^-1: (u^-1 + 1)/u^-1 = 1 + u
    Seed s = Seed::initial(make_registry(1, 1), matrix({{0}}));
    s.coeffs[0] = TropMonomial::variable(1, -1);
    auto constants = exchange_constants(freeze(s, {}));
    CHECK(constants.at(0) == LaurentPoly::variable(1) + LaurentPoly(1));
    CHECK(to_string(constants.at(0), *s.vars) == "u1 + 1");

    CHECK_THROWS_AS(exchange_constants(freeze(a2_seed(), {})), NotIsolated);
}

// ======================== membership ========================

TEST_CASE("isolated membership applies the divisibility criterion") {
    FrozenSeed f = freeze(rank1_seed(), {});

    LaurentPoly inside = LaurentPoly::variable(0) + lp_mono({{0, -1}}, 2);
    MembershipVerdict yes = isolated_membership(f, inside);
    CHECK(yes.member);
    CHECK(yes.exhaustive);
    CHECK_FALSE(yes.divisibility.has_value());

    MembershipVerdict no = isolated_membership(f, lp_mono({{0, -1}}));
    CHECK_FALSE(no.member);
    REQUIRE(no.divisibility.has_value());
    CHECK(no.divisibility->leaf.empty());
    CHECK(no.divisibility->alpha == ExponentMap{{0, -1}});
    CHECK(no.divisibility->lambda == LaurentPoly(1));
    CHECK(no.divisibility->required_divisor == LaurentPoly(2));
}

TEST_CASE("isolated membership accepts the frozen chain generator") {
    FrozenSeed f = freeze(a2_seed(), {1});
    LaurentPoly generator = lp_mono({{0, -1}, {1, 1}}) + lp_mono({{0, -1}});
    CHECK(isolated_membership(f, generator).member);
    // its square as well; x2 is invertible here but x1 is not
    CHECK(isolated_membership(f, generator * generator).member);
    CHECK(isolated_membership(f, lp_mono({{0, 1}, {1, -1}})).member);
    CHECK_FALSE(isolated_membership(f, lp_mono({{0, -1}, {1, -1}})).member);

    CHECK_THROWS_AS(isolated_membership(freeze(a2_seed(), {}), generator),
                    NotIsolated);
    // entries must be plain variables for the exponent grouping to make sense
    CHECK_THROWS_AS(isolated_membership(freeze(mutate(a2_seed(), 0), {1}),
                                        LaurentPoly(1)),
                    InvalidSeed);
}

TEST_CASE("cover membership on the two-seat chain") {
    Seed s = a2_seed();
    LaurentPoly deep = lp_mono({{0, -1}, {1, -1}}) + lp_mono({{0, -1}}) +
                       lp_mono({{1, -1}});  // (x1+x2+1)/(x1*x2)
    CHECK(cluster_algebra_membership(s, deep).member);
    CHECK(cluster_algebra_membership(s, LaurentPoly::variable(0) +
                                            LaurentPoly::variable(1))
              .member);
    CHECK(cluster_algebra_membership(s, LaurentPoly(5)).member);
    CHECK(cluster_algebra_membership(s, LaurentPoly()).member);

    MembershipVerdict no = cluster_algebra_membership(s, lp_mono({{0, -1}}));
    CHECK_FALSE(no.member);
    REQUIRE(no.divisibility.has_value());
    CHECK(no.divisibility->leaf == std::vector<int>{1});
    CHECK(no.divisibility->required_divisor ==
          LaurentPoly::variable(1) + LaurentPoly(1));

    CHECK_THROWS_AS(
        cluster_algebra_membership(
            Seed::initial(make_registry(3, 0), markov_matrix()), LaurentPoly(1)),
        NotAcyclic);
}

TEST_CASE("cover membership accepts every collected cluster variable") {
    for (const Seed& s : {a2_seed(), a3_seed()}) {
        ExchangeGraph g = explore_exchange_graph(s);
        REQUIRE(g.closed);
        for (const auto& [key, node] : g.nodes)
            for (const LaurentPoly& entry : node.seed.cluster)
                CHECK(cluster_algebra_membership(s, entry).member);
    }
}

TEST_CASE("upper membership re-expands across clusters") {
    Seed s = a2_seed();
    LaurentPoly generator = lp_mono({{0, -1}, {1, 1}}) + lp_mono({{0, -1}});

    MembershipVerdict yes = upper_membership(s, generator, 5);
    CHECK(yes.member);
    CHECK(yes.exhaustive);

    MembershipVerdict shallow = upper_membership(s, lp_mono({{0, -1}}), 1);
    CHECK_FALSE(shallow.member);
    CHECK_FALSE(shallow.exhaustive);
    REQUIRE(shallow.cluster.has_value());
    CHECK(shallow.cluster->word == std::vector<int>{0});
    CHECK(shallow.cluster->cluster == canonical_form(mutate(s, 0)).key);

    MembershipVerdict trivial = upper_membership(s, lp_mono({{0, -1}}), 0);
    CHECK(trivial.member);
    CHECK_FALSE(trivial.exhaustive);

    MembershipVerdict full = upper_membership(s, lp_mono({{0, -1}}));
    CHECK_FALSE(full.member);
    CHECK(full.exhaustive);
}

TEST_CASE("upper membership stays honest on open graphs") {
    Seed s = kronecker_seed();
    MembershipVerdict no = upper_membership(s, lp_mono({{0, -1}}), 3, 100);
    CHECK_FALSE(no.member);
    CHECK_FALSE(no.exhaustive);
    MembershipVerdict maybe =
        upper_membership(s, LaurentPoly::variable(0), 3, 100);
    CHECK(maybe.member);
    CHECK_FALSE(maybe.exhaustive);
}

TEST_CASE("upper membership accepts cluster variables and their products") {
    for (const Seed& s : {a2_seed(), a3_seed()}) {
        ExchangeGraph g = explore_exchange_graph(s);
        std::vector<LaurentPoly> pool;
        for (const auto& [key, node] : g.nodes)
            for (const LaurentPoly& entry : node.seed.cluster)
                pool.push_back(entry);
        for (size_t i = 0; i < pool.size(); i += 3)
            for (size_t j = i; j < pool.size(); j += 4)
                CHECK(upper_membership(s, pool[i] * pool[j]).member);
    }
}

TEST_CASE("membership rejects undeclared variables and non-plain seeds") {
    Seed s = a2_seed();
    CHECK_THROWS_AS(cluster_algebra_membership(s, lp_mono({{7, 1}})),
                    InvalidSeed);
    CHECK_THROWS_AS(upper_membership(s, lp_mono({{7, 1}})), InvalidSeed);
    CHECK_THROWS_AS(upper_membership(mutate(s, 0), LaurentPoly(1)),
                    InvalidSeed);
}

// ======================== containment chain ========================

TEST_CASE("membership verdicts respect the containment chain") {
    Seed s = a2_seed();
    auto rng = make_rng(4407);

    std::vector<LaurentPoly> elements = {
        LaurentPoly(1),
        LaurentPoly::variable(0),
        lp_mono({{0, -1}}),
        lp_mono({{0, -1}, {1, 1}}) + lp_mono({{0, -1}}),
        lp_mono({{0, -1}, {1, -1}}) + lp_mono({{0, -1}}) + lp_mono({{1, -1}}),
        lp_mono({{0, 1}, {1, -2}}),
        lp_mono({{0, 2}}) - lp_mono({{1, 1}}, 3),
    };
    for (int t = 0; t < 20; ++t) elements.push_back(random_element(rng, s));

    for (const LaurentPoly& a : elements) {
        bool in_a = cluster_algebra_membership(s, a).member;
        MembershipVerdict upper = upper_membership(s, a);
        REQUIRE(upper.exhaustive);

        // A is inside every depth-bounded upper ring
        if (in_a) {
            CHECK(upper.member);
            for (int d : {0, 1, 2})
                CHECK(upper_membership(s, a, d).member);
        }

        for (int slot : {0, 1}) {
            FrozenSeed f = freeze(s, {slot});

            // frozen-algebra members localize: x_s^N * a lands in A
            if (cluster_algebra_membership(f.seed, a).member) {
                bool localized = false;
                LaurentPoly shifted = a;
                for (int N = 0; N <= 16 && !localized; ++N) {
                    if (cluster_algebra_membership(s, shifted).member)
                        localized = true;
                    shifted = shifted * LaurentPoly::variable(f.frozen_vars[0]);
                }
                CHECK(localized);
            }

            // exhaustive upper members survive every freezing's upper test
            if (upper.member) {
                MembershipVerdict frozen_upper = upper_membership(f.seed, a);
                REQUIRE(frozen_upper.exhaustive);
                CHECK(frozen_upper.member);
            }
        }
    }
}

// ======================== differential testing ========================

TEST_CASE("the two-seat differential run agrees everywhere") {
    DifferentialReport report = au_differential(a2_seed(), 25, 7);
    CHECK(report.samples == 25);
    CHECK(report.agreements == 25);
    CHECK(report.disagreeing.empty());
}

TEST_CASE("the three-seat differential run agrees everywhere") {
    DifferentialReport report = au_differential(a3_seed(), 8, 3);
    CHECK(report.samples == 8);
    CHECK(report.agreements == 8);
    CHECK(report.disagreeing.empty());
}

TEST_CASE("differential runs need a closed graph") {
    CHECK_THROWS_AS(au_differential(kronecker_seed(), 5, 1), NotFiniteType);
    DifferentialReport empty = au_differential(a2_seed(), 0, 1);
    CHECK(empty.samples == 0);
    CHECK(empty.agreements == 0);
    CHECK(empty.disagreeing.empty());
}
