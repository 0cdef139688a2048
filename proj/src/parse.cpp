#include "clust/parse.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace clust {

// ---------------------------------------------------------------------------
// Element expressions

namespace {

enum class Tok { Name, Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    size_t at;  // byte offset, for messages
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < src.size()) {
        unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        size_t start = i;
        if (std::isalpha(c) || c == '_') {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) ||
                    src[i] == '_'))
                ++i;
            out.push_back({Tok::Name, std::string(src.substr(start, i - start)), start});
            continue;
        }
        if (std::isdigit(c)) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
                ++i;
            out.push_back({Tok::Int, std::string(src.substr(start, i - start)), start});
            continue;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            default:
                throw ParseError("unexpected character '" + std::string(1, src[i]) +
                                 "' at position " + std::to_string(i + 1));
        }
        out.push_back({kind, std::string(1, src[i]), start});
        ++i;
    }
    out.push_back({Tok::End, "", src.size()});
    return out;
}

class ElementParser {
public:
    ElementParser(const std::vector<Token>& toks, const VarTable& vars)
        : toks_(toks), vars_(vars) {}

    LaurentPoly parse() {
        LaurentPoly p = expr();
        if (peek().kind != Tok::End)
            fail("unexpected trailing input", peek());
        return p;
    }

private:
    const std::vector<Token>& toks_;
    const VarTable& vars_;
    size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }

    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw ParseError(msg + " at position " + std::to_string(t.at + 1));
    }

    LaurentPoly expr() {
        bool negate = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus)
            negate = next().kind == Tok::Minus;
        LaurentPoly p = term();
        if (negate) p = -p;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            if (next().kind == Tok::Plus)
                p += term();
            else
                p -= term();
        }
        return p;
    }

    LaurentPoly term() {
        LaurentPoly p = factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token& op = next();
            LaurentPoly f = factor();
            if (op.kind == Tok::Star) {
                p = p * f;
                continue;
            }
            if (f.is_zero()) fail("division by zero", op);
            if (!f.is_single_term())
                fail("cannot divide by a sum; clear denominators and divide "
                     "by a single monomial",
                     op);
            try {
                p = exact_div(p, f);
            } catch (const NotDivisible&) {
                fail("division is not exact over the integers", op);
            }
        }
        return p;
    }

    LaurentPoly factor() {
        LaurentPoly a = atom();
        if (peek().kind != Tok::Caret) return a;
        const Token& op = next();
        int e = signed_exponent();
        try {
            return a.pow(e);
        } catch (const NotDivisible&) {
            fail("negative power needs a single monomial with unit "
                 "coefficient; clear denominators",
                 op);
        }
    }

    LaurentPoly atom() {
        const Token& t = next();
        switch (t.kind) {
            case Tok::Name: {
                auto id = vars_.find(t.text);
                if (!id)
                    throw UnknownVariable("unknown variable '" + t.text +
                                          "' at position " +
                                          std::to_string(t.at + 1));
                return LaurentPoly::variable(*id);
            }
            case Tok::Int:
                return LaurentPoly(Int(t.text));
            case Tok::LParen: {
                LaurentPoly p = expr();
                if (peek().kind != Tok::RParen)
                    fail("expected ')'", peek());
                next();
                return p;
            }
            default:
                fail("expected a variable, integer, or '('", t);
        }
    }

    int signed_exponent() {
        int sign = 1;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus)
            sign = next().kind == Tok::Minus ? -1 : 1;
        const Token& t = next();
        if (t.kind != Tok::Int) fail("expected an integer exponent", t);
        long long value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(),
                                         t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size() ||
            value > 1000000)
            fail("exponent out of range", t);
        return sign * static_cast<int>(value);
    }
};

}  // namespace

LaurentPoly parse_element(std::string_view src, const VarTable& vars) {
    std::vector<Token> toks = lex(src);
    return ElementParser(toks, vars).parse();
}

// ---------------------------------------------------------------------------
// Seed files

namespace {

using nlohmann::json;

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

std::vector<std::string> name_list(const json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_array())
        throw ParseError(std::string("seed file needs an array field '") +
                         field + "'");
    std::vector<std::string> out;
    for (const json& item : doc[field]) {
        if (!item.is_string() || !valid_name(item.get<std::string>()))
            throw ParseError(std::string("'") + field +
                             "' entries must be identifier-shaped names");
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::vector<std::vector<int>> int_rows(const json& value, const char* field,
                                       size_t rows, size_t cols) {
    if (!value.is_array() || value.size() != rows)
        throw ParseError(std::string("'") + field + "' must have " +
                         std::to_string(rows) + " rows");
    std::vector<std::vector<int>> out;
    for (const json& row : value) {
        if (!row.is_array() || row.size() != cols)
            throw ParseError(std::string("'") + field + "' rows must have " +
                             std::to_string(cols) + " entries");
        std::vector<int> r;
        for (const json& cell : row) {
            if (!cell.is_number_integer())
                throw ParseError(std::string("'") + field +
                                 "' entries must be integers");
            long long v = cell.get<long long>();
            if (v < -1000000 || v > 1000000)
                throw ParseError(std::string("'") + field +
                                 "' entry out of range");
            r.push_back(static_cast<int>(v));
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

SeedFile parse_seed_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("seed file must be a JSON object");

    SeedFile out;
    if (doc.contains("name")) {
        if (!doc["name"].is_string())
            throw ParseError("'name' must be a string");
        out.name = doc["name"].get<std::string>();
    }

    std::vector<std::string> mutables = name_list(doc, "mutable");
    std::vector<std::string> frozen = name_list(doc, "frozen");
    const size_t n = mutables.size();
    const size_t m = frozen.size();

    VarTable table;
    for (const std::string& x : mutables) table.add(x, VarKind::Mutable);
    for (const std::string& u : frozen) table.add(u, VarKind::FrozenCoeff);

    if (!doc.contains("B")) throw ParseError("seed file needs a field 'B'");
    std::vector<std::vector<int>> b_rows = int_rows(doc["B"], "B", n, n);

    std::vector<std::vector<int>> exps(m, std::vector<int>(n, 0));
    if (doc.contains("coeff_exponents") && !(m == 0 && doc["coeff_exponents"].empty()))
        exps = int_rows(doc["coeff_exponents"], "coeff_exponents", m, n);

    Seed seed = Seed::initial(std::make_shared<const VarTable>(std::move(table)),
                              ExchangeMatrix(std::move(b_rows)));
    for (size_t j = 0; j < n; ++j) {
        ExponentMap e;
        for (size_t i = 0; i < m; ++i)
            if (exps[i][j] != 0) e[static_cast<int>(n + i)] = exps[i][j];
        seed.coeffs[j] = TropMonomial::from_exponents(std::move(e));
    }
    validate_seed(seed);
    out.seed = std::move(seed);
    return out;
}

SeedFile load_seed_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open seed file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_seed_json(buf.str());
}

}  // namespace clust
