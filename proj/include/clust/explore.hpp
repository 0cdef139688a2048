#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clust/seed.hpp"

namespace clust {

inline constexpr int kDefaultMaxDepth = 16;
inline constexpr int kDefaultMaxSeeds = 10000;

// Exchange graph up to permutation: one node per canonical seed, one edge
// per mutation performed while expanding.  On a closed graph every edge
// (a,k,b) has a reverse companion (b,k',a); k' can differ from k because
// canonical relabeling may permute the slots between representatives.
struct ExchangeGraph {
    struct Node {
        Seed seed;     // canonical representative (the map key serializes it)
        Seed reached;  // as first produced by BFS: reached == mutate(input, word)
        int depth = 0;
        std::vector<int> word;  // mutation word from the input seed, 0-based slots of `reached`'s lineage
    };
    struct Edge {
        std::string from;
        int index;  // slot mutated, in the numbering of from's `reached` seed
        std::string to;
    };

    std::map<std::string, Node> nodes;
    std::vector<Edge> edges;
    std::string start;  // canonical key of the input seed
    int depth_reached = 0;
    bool closed = false;  // true iff the frontier emptied before any bound hit
};

// Breadth-first search from the input seed, mutating at every slot and
// deduplicating by canonical key.  Nodes within a depth level are expanded
// in canonical-key order, so output is deterministic.  Hitting max_depth or
// max_seeds stops expansion and reports closed = false.
ExchangeGraph explore_exchange_graph(const Seed& s,
                                     int max_depth = kDefaultMaxDepth,
                                     int max_seeds = kDefaultMaxSeeds);

// Canonical serializations of every cluster entry across all nodes, sorted,
// deduplicated.  A superset of the initial cluster.
std::vector<std::string> collect_cluster_variables(const ExchangeGraph& g);

struct AuditEntry {
    std::vector<int> word;
    int depth;         // word length
    size_t max_terms;  // largest term count seen in any cluster entry along the word
};

// Applies each word to the seed, step by step.  Every step performs the
// exchange divisions, so completing the sweep certifies that no division
// failed.  A LaurentViolation is rethrown with the word and step prepended.
std::vector<AuditEntry> laurent_audit(const Seed& s,
                                      const std::vector<std::vector<int>>& words);

// true when exploration closes within max_seeds; empty when the bound was
// hit first (never false: non-closure within a bound proves nothing).
std::optional<bool> is_finite_type(const Seed& s,
                                   int max_seeds = kDefaultMaxSeeds);

}  // namespace clust
