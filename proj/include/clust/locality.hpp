#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clust/explore.hpp"
#include "clust/seed.hpp"

namespace clust {

// The mutation digraph has an edge i -> j iff B[j][i] > 0.  True iff it has
// no directed cycle.
bool is_acyclic(const ExchangeMatrix& b);

// Smallest slot whose column is entirely <= 0 (no outgoing arrows); empty
// iff the digraph is cyclic.
std::optional<int> find_sink(const ExchangeMatrix& b);

struct FrozenSeed {
    Seed seed;                      // reduced-rank seed over the extended registry
    std::vector<int> frozen_slots;  // source slots demoted, ascending
    std::vector<int> frozen_vars;   // registry ids of the demoted variables, aligned
    std::vector<int> kept_slots;    // source slot of each remaining slot, ascending
};

// Demotes the cluster variables at the given source slots into the
// coefficient semifield: each remaining y_j picks up x_s^{B_sj} per frozen
// slot s, and B drops the frozen rows and columns.  Slots are processed one
// at a time in increasing order; the outcome does not depend on that order.
// Every frozen slot's cluster entry must be a plain registry variable, which
// holds for initial seeds (the only place covers are built).
FrozenSeed freeze(const Seed& s, const std::vector<int>& slots);

// True iff mutating at i and then freezing slot j gives the same seed as
// freezing slot j and then mutating at i's new position.  i != j; slot j's
// entry must be a plain variable on both paths.
bool freezing_commutes(const Seed& s, int i, int j);

struct CoverLeaf {
    FrozenSeed frozen;
    std::map<int, LaurentPoly> exchange_constants;  // leaf slot -> P_i
};

// Splits an acyclic seed into isolated pieces: while the matrix is nonzero,
// pick the smallest sink i that still has an incoming arrow and the smallest
// j with B_ji < 0, then branch into freezing at i and freezing at j.  The
// worklist is first-in-first-out and leaves are emitted in dequeue order;
// branches that reach an already-seen frozen set are not duplicated.
std::vector<CoverLeaf> isolated_cover(const Seed& s);

// Expands the sink exchange relation symbolically and compares with 1:
// ((y_i (+) 1)/y_i) * x_i' * x_i - y_i^-1 * prod_{k: B_ki<0} x_k^-B_ki == 1.
// The slot must be a sink.
bool exchange_identity_holds(const Seed& s, int sink);

// P_i = (y_i + 1)/(y_i (+) 1) for each slot of an isolated seed (B == 0);
// the exchanged variable is then x_i' = P_i/x_i.  Throws NotIsolated when
// the matrix is nonzero.
std::map<int, LaurentPoly> exchange_constants(const FrozenSeed& f);

struct DivisibilityWitness {
    std::vector<int> leaf;         // frozen source slots identifying the leaf
    ExponentMap alpha;             // mutable exponents of the failing term group
    LaurentPoly lambda;            // that group's coefficient over frozen variables
    LaurentPoly required_divisor;  // exchange-constant product that must divide lambda
};

struct ClusterWitness {
    std::vector<int> word;  // mutation word reaching the rejecting cluster
    std::string cluster;    // canonical key of the rejecting node
};

struct MembershipVerdict {
    bool member = false;
    bool exhaustive = true;  // false when a bound kept the test partial
    std::optional<DivisibilityWitness> divisibility;
    std::optional<ClusterWitness> cluster;
};

// Membership in the algebra of an isolated seed.  Groups the element by its
// exponent vector alpha over the mutable variables; each group coefficient
// lambda_alpha must be divisible by prod_{i: alpha_i<0} P_i^-alpha_i over
// the frozen variables.  Witness: the first failing group in term order.
MembershipVerdict isolated_membership(const FrozenSeed& f, const LaurentPoly& a);

// Membership in the cluster algebra of an acyclic seed: the element (a
// Laurent polynomial in the initial cluster) must pass isolated_membership
// on every cover leaf.  The first failing leaf supplies the witness.
MembershipVerdict cluster_algebra_membership(const Seed& s, const LaurentPoly& a);

// Membership in the upper algebra, bounded: the element must be a Laurent
// polynomial over the coefficient ring in every cluster within mutation
// distance max_depth.  exhaustive iff the exchange graph closed, in which
// case the verdict is exact; otherwise acceptance is only necessary.
MembershipVerdict upper_membership(const Seed& s, const LaurentPoly& a,
                                   int max_depth = kDefaultMaxDepth,
                                   int max_seeds = kDefaultMaxSeeds);

struct DifferentialReport {
    int samples = 0;
    int agreements = 0;
    std::vector<std::string> disagreeing;  // text of any elements the two sides split on
};

// Draws random elements (combinations of cluster-variable products, some
// with Laurent monomial perturbations) and compares cluster-algebra
// membership against exhaustive upper membership on each.  Requires the
// exchange graph to close within the default bounds; throws NotFiniteType
// otherwise.
DifferentialReport au_differential(const Seed& s, int samples, uint64_t rng_seed);

}  // namespace clust
