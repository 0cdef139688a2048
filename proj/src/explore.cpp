#include "clust/explore.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace clust {

ExchangeGraph explore_exchange_graph(const Seed& s, int max_depth, int max_seeds) {
    validate_seed(s);
    if (max_depth < 0 || max_seeds < 0)
        throw InvalidSeed("exploration bounds must be nonnegative");

    ExchangeGraph g;
    CanonicalSeed c0 = canonical_form(s);
    g.start = c0.key;
    if (max_seeds == 0) return g;  // no room even for the root

    g.nodes.emplace(c0.key, ExchangeGraph::Node{c0.seed, s, 0, {}});
    std::vector<std::string> level{c0.key};
    bool truncated = false;
    int depth = 0;
    const int n = s.rank();

    while (!level.empty() && !truncated) {
        if (depth >= max_depth) {
            truncated = true;  // this level stays unexpanded
            break;
        }
        std::sort(level.begin(), level.end());
        std::vector<std::string> next;
        for (const std::string& key : level) {
            const ExchangeGraph::Node& node = g.nodes.at(key);
            for (int k = 0; k < n && !truncated; ++k) {
                Seed m = mutate(node.reached, k);
                CanonicalSeed cm = canonical_form(m);
                g.edges.push_back({key, k, cm.key});
                if (g.nodes.count(cm.key)) continue;
                if (static_cast<int>(g.nodes.size()) >= max_seeds) {
                    truncated = true;
                    break;
                }
                std::vector<int> word = node.word;
                word.push_back(k);
                g.nodes.emplace(cm.key, ExchangeGraph::Node{cm.seed, std::move(m),
                                                            depth + 1,
                                                            std::move(word)});
                next.push_back(cm.key);
            }
            if (truncated) break;
        }
        ++depth;
        level = std::move(next);
    }

    for (const auto& [key, node] : g.nodes)
        g.depth_reached = std::max(g.depth_reached, node.depth);
    g.closed = !truncated && level.empty();
    return g;
}

std::vector<std::string> collect_cluster_variables(const ExchangeGraph& g) {
    std::set<std::string> seen;
    for (const auto& [key, node] : g.nodes)
        for (const LaurentPoly& entry : node.seed.cluster)
            seen.insert(to_string(entry, *node.seed.vars));
    return {seen.begin(), seen.end()};
}

namespace {

std::string word_text(const std::vector<int>& word) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) os << ",";
        os << word[i] + 1;
    }
    os << ")";
    return os.str();
}

}  // namespace

std::vector<AuditEntry> laurent_audit(const Seed& s,
                                      const std::vector<std::vector<int>>& words) {
    validate_seed(s);
    std::vector<AuditEntry> report;
    report.reserve(words.size());
    for (const std::vector<int>& word : words) {
        AuditEntry entry{word, static_cast<int>(word.size()), 0};
        for (const LaurentPoly& p : s.cluster)
            entry.max_terms = std::max(entry.max_terms, p.term_count());
        Seed t = s;
        for (size_t step = 0; step < word.size(); ++step) {
            int k = word[step];
            if (k < 0 || k >= t.rank())
                throw InvalidSeed("audit word index out of range");
            try {
                t = mutate(t, k);
            } catch (const LaurentViolation& e) {
                throw LaurentViolation("word " + word_text(word) + " step " +
                                       std::to_string(step + 1) + ": " + e.what());
            }
            for (const LaurentPoly& p : t.cluster)
                entry.max_terms = std::max(entry.max_terms, p.term_count());
        }
        report.push_back(std::move(entry));
    }
    return report;
}

std::optional<bool> is_finite_type(const Seed& s, int max_seeds) {
    // depth never exceeds the node count, so max_seeds bounds both
    ExchangeGraph g = explore_exchange_graph(s, max_seeds, max_seeds);
    if (g.closed) return true;
    return std::nullopt;
}

}  // namespace clust
