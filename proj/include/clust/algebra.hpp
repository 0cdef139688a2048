#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clust/errors.hpp"

namespace clust {

// Exact integer coefficients.  Mutation denominators must divide exactly,
// so no fixed-width or modular shortcuts anywhere.
using Int = mpz_class;

enum class VarKind {
    Mutable,        // initial cluster variable
    FrozenCoeff,    // generator of the coefficient semifield
    FrozenCluster,  // cluster variable demoted by freezing
};

inline bool is_frozen(VarKind k) { return k != VarKind::Mutable; }

struct Var {
    std::string name;
    VarKind kind;

    bool operator==(const Var&) const = default;
};

// Ordered variable registry.  Declaration order fixes the term order, and
// with it the serialization of every polynomial over this registry.
// Variables are addressed by their declaration index.
class VarTable {
public:
    // Returns the new variable's index.  Throws InvalidSeed on a duplicate name.
    int add(const std::string& name, VarKind kind);

    int size() const { return static_cast<int>(vars_.size()); }
    const Var& operator[](int v) const { return vars_.at(static_cast<size_t>(v)); }
    std::optional<int> find(std::string_view name) const;

    std::vector<int> indices(VarKind kind) const;
    std::vector<int> frozen_indices() const;

    // Copy of this table with the listed variables' kinds replaced.
    VarTable with_kind(const std::vector<int>& vars, VarKind kind) const;

    bool operator==(const VarTable&) const;

private:
    std::vector<Var> vars_;
    std::map<std::string, int, std::less<>> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

// variable index -> exponent; zero exponents are never stored
using ExponentMap = std::map<int, int>;

class Monomial {
public:
    Monomial() = default;  // the unit monomial

    static Monomial variable(int v, int e = 1);
    static Monomial from_exponents(ExponentMap exps);

    int exponent(int v) const;
    const ExponentMap& exponents() const { return exps_; }
    bool is_unit() const { return exps_.empty(); }
    int degree() const;  // sum of exponents, may be negative

    Monomial& operator*=(const Monomial& o);
    friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
    Monomial inverse() const;
    Monomial pow(int e) const;

    // Graded lexicographic: total degree first, then the exponent vectors
    // compared entrywise in declaration order.  Returns <0, 0 or >0.
    static int compare(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial&) const = default;

private:
    ExponentMap exps_;
};

// Descending graded-lex order; iteration of a term map in this order is the
// canonical term order used by serialization.
struct MonomialDescending {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::compare(a, b) > 0;
    }
};

// Sparse Laurent polynomial with exact integer coefficients.  Immutable in
// spirit: arithmetic returns new values, nothing mutates shared state.
class LaurentPoly {
public:
    using TermMap = std::map<Monomial, Int, MonomialDescending>;

    LaurentPoly() = default;  // zero
    LaurentPoly(long c) : LaurentPoly(Int(c)) {}
    explicit LaurentPoly(Int c);

    static LaurentPoly monomial(const Monomial& m, Int c = 1);
    static LaurentPoly variable(int v, int e = 1);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    // single-term polynomial (a unit of the Laurent ring up to its coefficient)
    bool is_single_term() const { return terms_.size() == 1; }
    size_t term_count() const { return terms_.size(); }

    // coefficient of m, 0 if absent
    const Int& coeff(const Monomial& m) const;

    // True iff the polynomial equals one variable with coefficient 1.
    std::optional<int> as_plain_variable() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    LaurentPoly pow(int e) const;  // e < 0 only for single-term polynomials

    bool operator==(const LaurentPoly&) const = default;

    void add_term(const Monomial& m, const Int& c);  // merges, drops zeros

private:
    TermMap terms_;
};

// Exact quotient q with q*den == num.  Throws NotDivisible if no Laurent
// polynomial quotient exists (including integer-content failures).
LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den);

// True iff exact_div(num, den) succeeds.  Never throws; den must be nonzero.
bool divides(const LaurentPoly& den, const LaurentPoly& num);

// Element of a tropical semifield: an integer exponent vector over the
// frozen variables.  Multiplication adds exponents; the auxiliary addition
// takes the componentwise minimum (absent variables count as 0).
class TropMonomial {
public:
    TropMonomial() = default;  // the identity

    static TropMonomial variable(int v, int e = 1);
    static TropMonomial from_exponents(ExponentMap exps);

    const Monomial& monomial() const { return mono_; }
    bool is_one() const { return mono_.is_unit(); }
    int exponent(int v) const { return mono_.exponent(v); }

    TropMonomial& operator*=(const TropMonomial& o);
    friend TropMonomial operator*(TropMonomial a, const TropMonomial& b) { return a *= b; }
    TropMonomial inverse() const;
    TropMonomial pow(int e) const;

    bool operator==(const TropMonomial&) const = default;

private:
    explicit TropMonomial(Monomial m) : mono_(std::move(m)) {}
    Monomial mono_;
};

// Auxiliary addition of the tropical semifield.
TropMonomial oplus(const TropMonomial& a, const TropMonomial& b);

// The corresponding Laurent monomial with coefficient 1.
LaurentPoly laurent_of(const TropMonomial& a);

// Canonical text forms.  format/parse round-trip exactly; see parse.hpp.
std::string to_string(const Monomial& m, const VarTable& vars);
std::string to_string(const LaurentPoly& p, const VarTable& vars);
std::string to_string(const TropMonomial& t, const VarTable& vars);

}  // namespace clust
