#include "stabfree/parse.hpp"

#include <cctype>
#include <sstream>

namespace stabfree {

namespace {

struct Lexer {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer at position " + std::to_string(pos));
        return Int(std::string(s.substr(start, pos - start)));
    }
    std::string name() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() &&
            (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
            ++pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                      s[pos] == '_'))
                ++pos;
        }
        if (pos == start) throw ParseError("expected name at position " + std::to_string(pos));
        return std::string(s.substr(start, pos - start));
    }
};

class ExprParser {
public:
    ExprParser(const GroupRing& ring, std::string_view text) : ring_(ring), lex_{text} {}

    GrElem parse() {
        GrElem v = expr();
        if (!lex_.eof())
            throw ParseError("trailing input at position " + std::to_string(lex_.pos));
        return v;
    }

private:
    const GroupRing& ring_;
    Lexer lex_;

    GrElem expr() {
        bool neg = lex_.accept('-');
        GrElem v = term();
        if (neg) v = -v;
        while (true) {
            if (lex_.accept('+'))
                v = v + term();
            else if (lex_.accept('-'))
                v = v - term();
            else
                break;
        }
        return v;
    }

    GrElem term() {
        GrElem v = factor();
        while (lex_.accept('*')) v = v * factor();
        return v;
    }

    GrElem factor() {
        GrElem v = atom();
        if (lex_.accept('^')) {
            bool neg = lex_.accept('-');
            Int e = lex_.integer();
            if (!e.fits_ulong_p()) throw ParseError("exponent too large");
            if (neg) {
                // only group words are invertible in the grammar
                if (v.support_size() != 1 || !v.terms().begin()->second.is_one())
                    throw ParseError("negative exponents are only allowed on group generators");
                Word w = v.terms().begin()->first;
                return GrElem::from_word(ring_, w.pow(-static_cast<long long>(e.get_ui())));
            }
            return v.pow(static_cast<unsigned>(e.get_ui()));
        }
        return v;
    }

    GrElem atom() {
        if (lex_.accept('(')) {
            GrElem v = expr();
            if (!lex_.accept(')')) throw ParseError("missing ')'");
            return v;
        }
        char c = lex_.peek();
        if (std::isdigit(static_cast<unsigned char>(c)))
            return GrElem::from_int(ring_, lex_.integer());
        std::string n = lex_.name();
        if (auto idx = ring_.coeff->var_index(n))
            return GrElem::from_coeff(ring_, CoeffElem::variable(ring_.coeff, *idx));
        if (ring_.ngens == 2) {
            if (n == "s") return GrElem::from_word(ring_, Word::generator(0));
            if (n == "t") return GrElem::from_word(ring_, Word::generator(1));
        }
        if (n.size() >= 2 && n[0] == 'g') {
            bool digits = true;
            for (size_t i = 1; i < n.size() && digits; ++i)
                digits = std::isdigit(static_cast<unsigned char>(n[i])) != 0;
            if (digits) {
                unsigned long k = std::stoul(n.substr(1));
                if (k >= 1 && k <= ring_.ngens)
                    return GrElem::from_word(ring_, Word::generator(static_cast<unsigned>(k - 1)));
                throw ParseError("generator " + n + " out of range");
            }
        }
        throw ParseError("unknown name '" + n + "'");
    }
};

}  // namespace

GrElem parse_grelem(const GroupRing& ring, std::string_view text) {
    return ExprParser(ring, text).parse();
}

CoeffElem parse_coeff(const CoeffRingPtr& ring, std::string_view text) {
    GrElem g = parse_grelem(GroupRing{ring, 0}, text);
    CoeffElem c(ring);
    for (const auto& [w, coeff] : g.terms()) {
        if (!w.is_identity()) throw ParseError("unexpected group element in coefficient");
        c = c + coeff;
    }
    return c;
}

Word parse_word(unsigned ngens, std::string_view text) {
    static const CoeffRingPtr kZ = CoeffRing::make({}, {}, 0, false, true);
    GrElem g = parse_grelem(GroupRing{kZ, ngens}, text);
    if (g.support_size() != 1 || !g.terms().begin()->second.is_one())
        throw ParseError("not a plain word");
    return g.terms().begin()->first;
}

IntPoly parse_intpoly(std::string_view var, std::string_view text) {
    // large free cyclic ring so that no reduction can trigger while parsing
    CoeffRingPtr big = CoeffRing::make({std::string(var)}, {IntPoly::cyclic(1u << 12)}, 0);
    CoeffElem c = parse_coeff(big, text);
    std::vector<Int> coeffs;
    for (const auto& [e, v] : c.terms()) {
        if (e[0] >= coeffs.size()) coeffs.resize(e[0] + 1, Int(0));
        coeffs[e[0]] = v;
    }
    return IntPoly(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string gen_name(unsigned gen, unsigned ngens) {
    if (ngens == 2) return gen == 0 ? "s" : "t";
    return "g" + std::to_string(gen + 1);
}

// one monomial as sign and magnitude text, "1" for the constant term
std::pair<bool, std::string> monomial_text(const CoeffElem::Exps& e, const Int& c,
                                           const std::vector<std::string>& vars) {
    bool neg = c < 0;
    Int a = abs(Int(c));
    std::ostringstream os;
    bool have = false;
    if (a != 1) {
        os << a.get_str();
        have = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (have) os << "*";
        os << vars[i];
        if (e[i] > 1) os << "^" << e[i];
        have = true;
    }
    if (!have) os << "1";
    return {neg, os.str()};
}

std::string join_signed(const std::vector<std::pair<bool, std::string>>& parts) {
    if (parts.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i == 0) {
            if (parts[i].first) os << "-";
        } else {
            os << (parts[i].first ? " - " : " + ");
        }
        os << parts[i].second;
    }
    return os.str();
}

}  // namespace

std::string to_string(const Word& w, unsigned ngens) {
    if (w.is_identity()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& s : w.syllables()) {
        if (!first) os << "*";
        os << gen_name(s.gen, ngens);
        if (s.exp != 1) os << "^" << s.exp;
        first = false;
    }
    return os.str();
}

std::string to_string(const CoeffElem& a) {
    std::vector<std::pair<bool, std::string>> parts;
    for (const auto& [e, c] : a.terms())
        parts.push_back(monomial_text(e, c, a.ring()->variables()));
    return join_signed(parts);
}

std::string to_string(const IntPoly& p, std::string_view var) {
    std::vector<std::pair<bool, std::string>> parts;
    std::vector<std::string> vars{std::string(var)};
    for (int i = 0; i <= p.degree(); ++i) {
        Int c = p.coeff(static_cast<unsigned>(i));
        if (c == 0) continue;
        parts.push_back(monomial_text({static_cast<uint32_t>(i)}, c, vars));
    }
    return join_signed(parts);
}

std::string to_string(const GrElem& a) {
    std::vector<std::pair<bool, std::string>> parts;
    for (const auto& [w, c] : a.terms()) {
        if (w.is_identity()) {
            if (c.nterms() == 1) {
                parts.push_back(monomial_text(c.terms().begin()->first, c.terms().begin()->second,
                                              c.ring()->variables()));
            } else {
                parts.emplace_back(false, "(" + to_string(c) + ")");
            }
            continue;
        }
        std::string wt = to_string(w, a.ring().ngens);
        if (c.is_one()) {
            parts.emplace_back(false, wt);
        } else if (c.nterms() == 1) {
            auto [neg, mono] =
                monomial_text(c.terms().begin()->first, c.terms().begin()->second,
                              c.ring()->variables());
            parts.emplace_back(neg, mono == "1" ? wt : mono + "*" + wt);
        } else {
            parts.emplace_back(false, "(" + to_string(c) + ")*" + wt);
        }
    }
    return join_signed(parts);
}

}  // namespace stabfree
