#pragma once

#include <string>
#include <vector>

#include "clust/algebra.hpp"

namespace clust {

// Minimal positive integer diagonal D with D*B skew-symmetric, i.e.
// d[i]*B[i][j] == -d[j]*B[j][i].  Computed by propagating the ratio
// |B_ij|/|B_ji| across connected components of the nonzero pattern and
// clearing denominators, smallest multiplier per component.
// Throws NotSkewSymmetrizable when the sign pattern or the ratios forbid it.
std::vector<int> find_symmetrizer(const std::vector<std::vector<int>>& rows);

// Integer exchange matrix over the mutable slots of a seed.  Construction
// validates sign-skew-symmetry and caches a symmetrizer, so every live
// instance is skew-symmetrizable.
class ExchangeMatrix {
public:
    ExchangeMatrix() = default;  // rank 0
    explicit ExchangeMatrix(std::vector<std::vector<int>> rows);

    int size() const { return static_cast<int>(rows_.size()); }
    int at(int i, int j) const {
        return rows_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    const std::vector<std::vector<int>>& rows() const { return rows_; }
    const std::vector<int>& symmetrizer() const { return d_; }

    ExchangeMatrix mutated(int k) const;

    // principal submatrix on the listed slots, in the given order
    ExchangeMatrix submatrix(const std::vector<int>& keep) const;

    bool operator==(const ExchangeMatrix& o) const { return rows_ == o.rows_; }

private:
    std::vector<std::vector<int>> rows_;
    std::vector<int> d_;
};

// A seed: cluster expressions, coefficient tuple and exchange matrix over a
// shared variable registry.  cluster[i] is the expansion of the i-th cluster
// variable in the registry's own variables (for the initial seed, just x_i);
// coeffs[i] lives over the frozen variables.  Immutable by convention:
// mutation returns new seeds.
struct Seed {
    VarTablePtr vars;
    std::vector<LaurentPoly> cluster;
    std::vector<TropMonomial> coeffs;
    ExchangeMatrix b;

    int rank() const { return static_cast<int>(cluster.size()); }

    // Seed whose cluster is the registry's mutable variables in declaration
    // order, with unit coefficients and the given matrix.
    static Seed initial(VarTablePtr vars, ExchangeMatrix b);

    bool operator==(const Seed& o) const;
};

// Throws InvalidSeed naming the first violated invariant: dimension
// agreement, coefficient support on frozen variables only, nonzero cluster
// entries.  The matrix validates itself at construction.
void validate_seed(const Seed& s);

// The three mutation formulas at slot k (0-based).

// New cluster entry: (y_k * prod_j x_j^[B_jk]+ + prod_j x_j^[-B_jk]+)
// divided by (y_k (+) 1) * x_k.  The division is exact for every valid seed;
// failure throws LaurentViolation.
LaurentPoly mutate_cluster(const Seed& s, int k);

// New coefficient tuple: y_k inverts, y_j picks up y_k^[B_kj]+ (y_k (+) 1)^-B_kj.
std::vector<TropMonomial> mutate_coefficients(const std::vector<TropMonomial>& y,
                                              const ExchangeMatrix& b, int k);

Seed mutate(const Seed& s, int k);
Seed mutate(const Seed& s, const std::vector<int>& word);

// Relabels slots: entry i of the result is entry sigma[i] of s, and
// B'[i][j] = B[sigma[i]][sigma[j]].  sigma must be a permutation of 0..n-1.
Seed permute(const Seed& s, const std::vector<int>& sigma);

struct CanonicalSeed {
    Seed seed;
    std::string key;  // canonical serialization; equal keys <=> same seed up to permutation
};

// Sorts slots by (cluster text, coefficient text, matrix column), ties kept
// in original order.  Cluster entries of a genuine seed are pairwise
// distinct, which makes the key invariant under permutation.
CanonicalSeed canonical_form(const Seed& s);

std::string to_string(const ExchangeMatrix& b);
std::string to_string(const Seed& s);

}  // namespace clust
