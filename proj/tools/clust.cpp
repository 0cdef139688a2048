#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clust/explore.hpp"
#include "clust/locality.hpp"
#include "clust/parse.hpp"

namespace {

using namespace clust;

std::string word_text(const std::vector<int>& word) {
    if (word.empty()) return "(initial)";
    std::string out;
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(word[i] + 1);
    }
    return out;
}

std::string slot_name(const Seed& s, int slot) {
    auto v = s.cluster[static_cast<size_t>(slot)].as_plain_variable();
    return v ? (*s.vars)[*v].name : to_string(s.cluster[static_cast<size_t>(slot)], *s.vars);
}

std::string freeze_text(const Seed& source, const std::vector<int>& slots) {
    std::string out = "freeze{";
    for (size_t i = 0; i < slots.size(); ++i) {
        if (i) out += ",";
        out += slot_name(source, slots[i]);
    }
    return out + "}";
}

// --at takes variable names; they must sit in the cluster as plain entries
std::vector<int> slots_of_names(const Seed& s, const std::vector<std::string>& names) {
    std::vector<int> slots;
    for (const std::string& name : names) {
        auto id = s.vars->find(name);
        if (!id) throw InvalidSeed("unknown variable '" + name + "'");
        int slot = -1;
        for (int i = 0; i < s.rank(); ++i) {
            auto v = s.cluster[static_cast<size_t>(i)].as_plain_variable();
            if (v && *v == *id) slot = i;
        }
        if (slot < 0)
            throw InvalidSeed("'" + name + "' is not a mutable cluster variable");
        slots.push_back(slot);
    }
    return slots;
}

int cmd_validate(const SeedFile& file) {
    std::cout << "valid, rank " << file.seed.rank() << ", "
              << file.seed.vars->size() - file.seed.rank() << " frozen\n";
    return 0;
}

int cmd_mutate(const SeedFile& file, const std::vector<int>& word) {
    std::vector<int> zero_based;
    for (int k : word) zero_based.push_back(k - 1);
    std::cout << to_string(mutate(file.seed, zero_based)) << "\n";
    return 0;
}

int cmd_explore(const SeedFile& file, int max_depth, int max_seeds) {
    ExchangeGraph g = explore_exchange_graph(file.seed, max_depth, max_seeds);
    std::cout << (g.closed ? "closed" : "open") << ", " << g.nodes.size()
              << " seeds, " << collect_cluster_variables(g).size()
              << " variables\n";
    return 0;
}

int cmd_vars(const SeedFile& file) {
    ExchangeGraph g = explore_exchange_graph(file.seed);
    if (!g.closed)
        std::cerr << "note: exploration hit its bounds; the list may be partial\n";
    for (const std::string& v : collect_cluster_variables(g))
        std::cout << v << "\n";
    return 0;
}

int cmd_is_acyclic(const SeedFile& file) {
    if (is_acyclic(file.seed.b)) {
        std::cout << "acyclic\n";
        return 0;
    }
    std::cout << "cyclic\n";
    return 1;
}

int cmd_freeze(const SeedFile& file, const std::vector<std::string>& names) {
    FrozenSeed f = freeze(file.seed, slots_of_names(file.seed, names));
    std::cout << freeze_text(file.seed, f.frozen_slots) << "\n"
              << to_string(f.seed) << "\n";
    return 0;
}

int cmd_cover(const SeedFile& file) {
    for (const CoverLeaf& leaf : isolated_cover(file.seed)) {
        std::cout << freeze_text(file.seed, leaf.frozen.frozen_slots) << "\n";
        for (const auto& [slot, p] : leaf.exchange_constants)
            std::cout << "  P(" << slot_name(leaf.frozen.seed, slot)
                      << ") = " << to_string(p, *leaf.frozen.seed.vars) << "\n";
    }
    return 0;
}

int cmd_member(const SeedFile& file, const std::string& element,
               const std::string& ring, int depth) {
    LaurentPoly a = parse_element(element, *file.seed.vars);
    MembershipVerdict v;
    if (ring == "A") {
        v = cluster_algebra_membership(file.seed, a);
        std::cout << (v.member ? "member" : "not a member") << "\n";
        if (v.divisibility) {
            const DivisibilityWitness& w = *v.divisibility;
            std::cout << "leaf " << freeze_text(file.seed, w.leaf) << "\n"
                      << "term group "
                      << to_string(Monomial::from_exponents(w.alpha),
                                   *file.seed.vars)
                      << "\n"
                      << "coefficient " << to_string(w.lambda, *file.seed.vars)
                      << "\n"
                      << "required divisor "
                      << to_string(w.required_divisor, *file.seed.vars) << "\n";
        }
    } else {
        v = upper_membership(file.seed, a, depth);
        std::cout << (v.member ? "member" : "not a member") << "\n"
                  << (v.exhaustive ? "exhaustive" : "depth-bounded") << "\n";
        if (v.cluster)
            std::cout << "cluster at word " << word_text(v.cluster->word) << "\n";
    }
    return v.member ? 0 : 1;
}

int cmd_check_au(const SeedFile& file, int samples, uint64_t rng_seed) {
    DifferentialReport report = au_differential(file.seed, samples, rng_seed);
    std::cout << "agree " << report.agreements << "/" << report.samples << "\n";
    for (const std::string& text : report.disagreeing)
        std::cout << "disagree on: " << text << "\n";
    return report.agreements == report.samples ? 0 : 1;
}

int cmd_laurent_audit(const SeedFile& file, int depth, int samples,
                      uint64_t rng_seed) {
    const int n = file.seed.rank();
    if (depth < 0) throw InvalidSeed("--depth must be nonnegative");
    std::vector<std::vector<int>> words;
    if (n == 0 || depth == 0) {
        words.push_back({});
    } else if (samples > 0) {
        std::mt19937_64 rng(rng_seed);
        std::uniform_int_distribution<int> len(1, depth);
        std::uniform_int_distribution<int> letter(0, n - 1);
        for (int t = 0; t < samples; ++t) {
            std::vector<int> w(static_cast<size_t>(len(rng)));
            for (int& k : w) k = letter(rng);
            words.push_back(std::move(w));
        }
    } else {
        // every word of length <= depth, shortest first
        double total = 1;
        for (int l = 1; l <= depth; ++l) total = total * n + 1;
        if (n > 0 && total > 200000)
            throw InvalidSeed("too many words to enumerate; use --samples");
        words.push_back({});
        size_t level_start = 0;
        for (int l = 1; l <= depth && n > 0; ++l) {
            size_t level_end = words.size();
            for (size_t i = level_start; i < level_end; ++i)
                for (int k = 0; k < n; ++k) {
                    std::vector<int> w = words[i];
                    w.push_back(k);
                    words.push_back(std::move(w));
                }
            level_start = level_end;
        }
    }
    std::vector<AuditEntry> entries = laurent_audit(file.seed, words);
    size_t max_terms = 0;
    for (const AuditEntry& e : entries) max_terms = std::max(max_terms, e.max_terms);
    std::cout << "audited " << entries.size() << " words, max terms "
              << max_terms << ", 0 violations\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symbolic workbench for cluster algebras with tropical coefficients"};
    app.require_subcommand(1);

    std::string path;
    std::vector<int> word;
    std::vector<std::string> names;
    std::string element, ring;
    int max_depth = kDefaultMaxDepth;
    int max_seeds = kDefaultMaxSeeds;
    int depth = kDefaultMaxDepth;
    int samples = 0;
    uint64_t rng_seed = 0;

    auto add_seed_arg = [&path](CLI::App* cmd) {
        cmd->add_option("seed", path, "seed file (JSON)")->required();
    };

    CLI::App* validate = app.add_subcommand("validate", "check a seed file");
    add_seed_arg(validate);

    CLI::App* mut = app.add_subcommand("mutate", "apply a mutation word");
    add_seed_arg(mut);
    mut->add_option("--at", word, "1-based slot indices, in order")
        ->required()
        ->delimiter(',');

    CLI::App* explore_cmd = app.add_subcommand("explore", "walk the exchange graph");
    add_seed_arg(explore_cmd);
    explore_cmd->add_option("--max-depth", max_depth, "mutation distance bound");
    explore_cmd->add_option("--max-seeds", max_seeds, "seed count bound");

    CLI::App* vars_cmd = app.add_subcommand("vars", "list the cluster variables");
    add_seed_arg(vars_cmd);

    CLI::App* acyclic_cmd = app.add_subcommand("is-acyclic", "test the mutation digraph");
    add_seed_arg(acyclic_cmd);

    CLI::App* freeze_cmd = app.add_subcommand("freeze", "demote cluster variables");
    add_seed_arg(freeze_cmd);
    freeze_cmd->add_option("--at", names, "variable names to freeze")
        ->required()
        ->delimiter(',');

    CLI::App* cover_cmd = app.add_subcommand("cover", "split into isolated pieces");
    add_seed_arg(cover_cmd);

    CLI::App* member_cmd = app.add_subcommand("member", "decide membership");
    add_seed_arg(member_cmd);
    member_cmd->add_option("--element", element, "Laurent expression")->required();
    member_cmd->add_option("--in", ring, "A or U")
        ->required()
        ->check(CLI::IsMember({"A", "U"}));
    member_cmd->add_option("--depth", depth, "exploration bound for U");

    CLI::App* check_cmd = app.add_subcommand("check-au", "compare A against U on samples");
    add_seed_arg(check_cmd);
    check_cmd->add_option("--samples", samples, "number of random elements")->required();
    check_cmd->add_option("--rng", rng_seed, "random seed")->required();

    CLI::App* audit_cmd = app.add_subcommand("laurent-audit",
                                             "replay mutation words, watching division");
    add_seed_arg(audit_cmd);
    audit_cmd->add_option("--depth", depth, "maximum word length")->required();
    audit_cmd->add_option("--samples", samples,
                          "random words instead of full enumeration");
    audit_cmd->add_option("--rng", rng_seed, "random seed for --samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        SeedFile file = load_seed_file(path);
        if (app.got_subcommand(validate)) return cmd_validate(file);
        if (app.got_subcommand(mut)) return cmd_mutate(file, word);
        if (app.got_subcommand(explore_cmd))
            return cmd_explore(file, max_depth, max_seeds);
        if (app.got_subcommand(vars_cmd)) return cmd_vars(file);
        if (app.got_subcommand(acyclic_cmd)) return cmd_is_acyclic(file);
        if (app.got_subcommand(freeze_cmd)) return cmd_freeze(file, names);
        if (app.got_subcommand(cover_cmd)) return cmd_cover(file);
        if (app.got_subcommand(member_cmd))
            return cmd_member(file, element, ring, depth);
        if (app.got_subcommand(check_cmd))
            return cmd_check_au(file, samples, rng_seed);
        if (app.got_subcommand(audit_cmd))
            return cmd_laurent_audit(file, depth, samples, rng_seed);
    } catch (const LaurentViolation& e) {
        std::cerr << "laurent violation: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
