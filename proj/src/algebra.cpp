#include "clust/algebra.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <utility>

namespace clust {

// ---------------------------------------------------------------------------
// VarTable

int VarTable::add(const std::string& name, VarKind kind) {
    if (name.empty())
        throw InvalidSeed("variable name must be nonempty");
    if (index_.count(name))
        throw InvalidSeed("duplicate variable name '" + name + "'");
    vars_.push_back(Var{name, kind});
    int v = static_cast<int>(vars_.size()) - 1;
    index_.emplace(name, v);
    return v;
}

std::optional<int> VarTable::find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> VarTable::indices(VarKind kind) const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
        if (vars_[static_cast<size_t>(v)].kind == kind) out.push_back(v);
    return out;
}

std::vector<int> VarTable::frozen_indices() const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
        if (is_frozen(vars_[static_cast<size_t>(v)].kind)) out.push_back(v);
    return out;
}

VarTable VarTable::with_kind(const std::vector<int>& vars, VarKind kind) const {
    VarTable t(*this);
    for (int v : vars) t.vars_.at(static_cast<size_t>(v)).kind = kind;
    return t;
}

bool VarTable::operator==(const VarTable& o) const { return vars_ == o.vars_; }

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(int v, int e) {
    Monomial m;
    if (e != 0) m.exps_[v] = e;
    return m;
}

Monomial Monomial::from_exponents(ExponentMap exps) {
    Monomial m;
    m.exps_ = std::move(exps);
    std::erase_if(m.exps_, [](const auto& kv) { return kv.second == 0; });
    return m;
}

int Monomial::exponent(int v) const {
    auto it = exps_.find(v);
    return it == exps_.end() ? 0 : it->second;
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [v, e] : exps_) d += e;
    return d;
}

Monomial& Monomial::operator*=(const Monomial& o) {
    for (const auto& [v, e] : o.exps_) {
        int& slot = exps_[v];
        slot += e;
        if (slot == 0) exps_.erase(v);
    }
    return *this;
}

Monomial Monomial::inverse() const {
    Monomial m;
    for (const auto& [v, e] : exps_) m.exps_[v] = -e;
    return m;
}

Monomial Monomial::pow(int e) const {
    Monomial m;
    if (e == 0) return m;
    for (const auto& [v, x] : exps_) m.exps_[v] = x * e;
    return m;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    // entrywise in declaration order; absent entries are 0
    auto ia = a.exps_.begin(), ib = b.exps_.begin();
    while (ia != a.exps_.end() || ib != b.exps_.end()) {
        int va = ia != a.exps_.end() ? ia->first : INT_MAX;
        int vb = ib != b.exps_.end() ? ib->first : INT_MAX;
        int v = std::min(va, vb);
        int ea = va == v ? ia->second : 0;
        int eb = vb == v ? ib->second : 0;
        if (ea != eb) return ea < eb ? -1 : 1;
        if (va == v) ++ia;
        if (vb == v) ++ib;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(Int c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

LaurentPoly LaurentPoly::monomial(const Monomial& m, Int c) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace(m, std::move(c));
    return p;
}

LaurentPoly LaurentPoly::variable(int v, int e) {
    return monomial(Monomial::variable(v, e));
}

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_unit() &&
           terms_.begin()->second == 1;
}

const Int& LaurentPoly::coeff(const Monomial& m) const {
    static const Int zero = 0;
    auto it = terms_.find(m);
    return it == terms_.end() ? zero : it->second;
}

std::optional<int> LaurentPoly::as_plain_variable() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [m, c] = *terms_.begin();
    if (c != 1 || m.exponents().size() != 1) return std::nullopt;
    const auto& [v, e] = *m.exponents().begin();
    if (e != 1) return std::nullopt;
    return v;
}

void LaurentPoly::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    Int c;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            c = ca * cb;
            p.add_term(ma * mb, c);
        }
    return p;
}

LaurentPoly LaurentPoly::pow(int e) const {
    if (e < 0) {
        if (terms_.size() != 1)
            throw NotDivisible("negative power of a polynomial with more than one term");
        const auto& [m, c] = *terms_.begin();
        if (c != 1 && c != -1)
            throw NotDivisible("negative power of a non-unit coefficient");
        Int cc = (c == -1 && (e % 2 != 0)) ? -1 : 1;
        return monomial(m.pow(e), cc);
    }
    LaurentPoly acc(1);
    LaurentPoly base = *this;
    int k = e;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Exact division
//
// Laurent divisibility reduces to polynomial divisibility: factor out of each
// operand the monomial of per-variable minimum exponents.  The reduced
// operands have minimal exponent 0 in every variable, and over a domain the
// quotient of two such polynomials, when it is Laurent at all, is a genuine
// polynomial.  Remainder-zero long division in graded-lex order decides it.

namespace {

// per-variable minimum exponent over all terms (variables absent from a term
// contribute 0)
Monomial min_exponent_monomial(const LaurentPoly& p) {
    ExponentMap mins;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [v, e] : m.exponents()) {
            auto it = mins.find(v);
            if (it == mins.end())
                mins[v] = first ? e : std::min(e, 0);
            else
                it->second = std::min(it->second, e);
        }
        // variables missing from this term pull the minimum down to <= 0
        for (auto& [v, e] : mins)
            if (!m.exponents().count(v)) e = std::min(e, 0);
        first = false;
    }
    return Monomial::from_exponents(std::move(mins));
}

LaurentPoly shift(const LaurentPoly& p, const Monomial& m) {
    LaurentPoly q;
    for (const auto& [mono, c] : p.terms()) q.add_term(mono * m, c);
    return q;
}

}  // namespace

LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw NotDivisible("division by zero");
    if (num.is_zero()) return LaurentPoly{};

    const Monomial mnum = min_exponent_monomial(num);
    const Monomial mden = min_exponent_monomial(den);
    LaurentPoly r = shift(num, mnum.inverse());
    const LaurentPoly d = shift(den, mden.inverse());

    const auto& [dlead, dcoeff] = *d.terms().begin();
    LaurentPoly q;
    while (!r.is_zero()) {
        const auto& [rlead, rcoeff] = *r.terms().begin();
        // leading monomial of the divisor must divide, entrywise
        Monomial step = rlead * dlead.inverse();
        bool ok = true;
        for (const auto& [v, e] : step.exponents())
            if (e < 0) { ok = false; break; }
        if (ok && !mpz_divisible_p(rcoeff.get_mpz_t(), dcoeff.get_mpz_t()))
            ok = false;
        if (!ok) throw NotDivisible("no exact Laurent quotient");
        Int c = rcoeff / dcoeff;
        q.add_term(step, c);
        r -= LaurentPoly::monomial(step, c) * d;
    }
    return shift(q, mnum * mden.inverse());
}

bool divides(const LaurentPoly& den, const LaurentPoly& num) {
    try {
        exact_div(num, den);
        return true;
    } catch (const NotDivisible&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// TropMonomial

TropMonomial TropMonomial::variable(int v, int e) {
    return TropMonomial(Monomial::variable(v, e));
}

TropMonomial TropMonomial::from_exponents(ExponentMap exps) {
    return TropMonomial(Monomial::from_exponents(std::move(exps)));
}

TropMonomial& TropMonomial::operator*=(const TropMonomial& o) {
    mono_ *= o.mono_;
    return *this;
}

TropMonomial TropMonomial::inverse() const { return TropMonomial(mono_.inverse()); }

TropMonomial TropMonomial::pow(int e) const { return TropMonomial(mono_.pow(e)); }

TropMonomial oplus(const TropMonomial& a, const TropMonomial& b) {
    ExponentMap out;
    for (const auto& [v, e] : a.monomial().exponents())
        out[v] = std::min(e, b.exponent(v));
    for (const auto& [v, e] : b.monomial().exponents())
        if (!a.monomial().exponents().count(v)) out[v] = std::min(e, 0);
    return TropMonomial::from_exponents(std::move(out));
}

LaurentPoly laurent_of(const TropMonomial& a) {
    return LaurentPoly::monomial(a.monomial());
}

// ---------------------------------------------------------------------------
// Canonical text forms

std::string to_string(const Monomial& m, const VarTable& vars) {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, e] : m.exponents()) {
        if (!first) os << "*";
        os << vars[v].name;
        if (e != 1) os << "^" << e;
        first = false;
    }
    return os.str();
}

std::string to_string(const LaurentPoly& p, const VarTable& vars) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Int a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (m.is_unit()) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << to_string(m, vars);
        }
        first = false;
    }
    return os.str();
}

std::string to_string(const TropMonomial& t, const VarTable& vars) {
    return to_string(t.monomial(), vars);
}

}  // namespace clust
