#include "lca/parse.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace lca {
namespace {

struct Token {
    enum Type { Ident, Int, Plus, LParen, RParen, LBracket, RBracket, Caret, Comma, Equals, End };
    Type type;
    std::string text;
    std::uint64_t value = 0;
    std::size_t pos = 0;
};

const char* type_name(Token::Type t) {
    switch (t) {
        case Token::Ident: return "identifier";
        case Token::Int: return "integer";
        case Token::Plus: return "'+'";
        case Token::LParen: return "'('";
        case Token::RParen: return "')'";
        case Token::LBracket: return "'['";
        case Token::RBracket: return "']'";
        case Token::Caret: return "'^'";
        case Token::Comma: return "','";
        case Token::Equals: return "'='";
        case Token::End: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
            out.push_back({Token::Ident, text.substr(start, i - start), 0, start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                std::uint64_t d = static_cast<std::uint64_t>(text[i] - '0');
                if (v > (UINT64_MAX - d) / 10) throw SyntaxError("integer literal too large", start);
                v = v * 10 + d;
                ++i;
            }
            out.push_back({Token::Int, text.substr(start, i - start), v, start});
            continue;
        }
        Token::Type t;
        switch (c) {
            case '+': t = Token::Plus; break;
            case '(': t = Token::LParen; break;
            case ')': t = Token::RParen; break;
            case '[': t = Token::LBracket; break;
            case ']': t = Token::RBracket; break;
            case '^': t = Token::Caret; break;
            case ',': t = Token::Comma; break;
            case '=': t = Token::Equals; break;
            default: throw SyntaxError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({t, text.substr(i, 1), 0, i});
        ++i;
    }
    out.push_back({Token::End, "", 0, text.size()});
    return out;
}

bool is_keyword(const std::string& s) {
    static const char* kw[] = {"let", "primes", "distinct", "const", "in", "inf",
                               "dsum", "prod", "locprod", "sub",
                               "Z", "R", "T", "Zinf", "Zp", "Qp"};
    for (const char* k : kw)
        if (s == k) return true;
    return false;
}

// A prime slot inside an atom: either a literal or a reference to a bound
// sequence.  Constant sequences collapse to their prime here.
struct Slot {
    std::uint64_t p = 0;
    std::optional<PrimeSequence> seq;
    std::size_t pos = 0;
};

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    GroupExpr run() {
        GroupExpr e = parse_expr();
        expect(Token::End);
        return e;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    std::map<std::string, PrimeSequence> env_;

    const Token& peek() const { return toks_[at_]; }
    Token next() { return toks_[at_++]; }

    Token expect(Token::Type t) {
        if (peek().type != t)
            throw SyntaxError(std::string("expected ") + type_name(t) + ", found " +
                                  (peek().type == Token::Ident ? "'" + peek().text + "'"
                                                               : type_name(peek().type)),
                              peek().pos);
        return next();
    }

    bool accept_word(const char* w) {
        if (peek().type == Token::Ident && peek().text == w) {
            next();
            return true;
        }
        return false;
    }

    void expect_word(const char* w) {
        if (!accept_word(w))
            throw SyntaxError(std::string("expected '") + w + "'", peek().pos);
    }

    GroupExpr parse_expr() {
        std::vector<GroupExpr> parts;
        parts.push_back(parse_term());
        while (peek().type == Token::Plus) {
            next();
            parts.push_back(parse_term());
        }
        return GroupExpr::sum(std::move(parts));
    }

    GroupExpr parse_term() {
        const Token& t = peek();
        if (t.type == Token::LParen) {
            next();
            GroupExpr e = parse_expr();
            expect(Token::RParen);
            return e;
        }
        if (t.type != Token::Ident)
            throw SyntaxError("expected an expression", t.pos);
        if (t.text == "let") return parse_let();
        if (t.text == "dsum" || t.text == "prod" || t.text == "locprod") return parse_family();
        return GroupExpr::atom(parse_fixed_atom());
    }

    GroupExpr parse_let() {
        expect_word("let");
        Token name = expect(Token::Ident);
        if (is_keyword(name.text))
            throw SyntaxError("'" + name.text + "' is reserved and cannot name a sequence", name.pos);
        expect(Token::Equals);
        expect_word("primes");
        PrimeSequence seq = parse_seqspec();
        expect_word("in");
        auto shadowed = env_.find(name.text);
        std::optional<PrimeSequence> saved;
        if (shadowed != env_.end()) saved = shadowed->second;
        env_.insert_or_assign(name.text, seq);
        GroupExpr body = parse_expr();
        if (saved)
            env_.insert_or_assign(name.text, *saved);
        else
            env_.erase(name.text);
        return body;
    }

    PrimeSequence parse_seqspec() {
        if (accept_word("const")) {
            expect(Token::LParen);
            Token v = expect(Token::Int);
            expect(Token::RParen);
            if (!is_prime(v.value))
                throw UnknownAtom("const sequence needs a prime, got " + v.text, v.pos);
            return PrimeSequence::constant(Prime(v.value));
        }
        expect_word("distinct");
        std::vector<std::uint64_t> seed;
        if (peek().type == Token::LParen) {
            next();
            seed.push_back(expect(Token::Int).value);
            while (peek().type == Token::Comma) {
                next();
                seed.push_back(expect(Token::Int).value);
            }
            Token close = expect(Token::RParen);
            try {
                return PrimeSequence::distinct(seed);
            } catch (const std::invalid_argument& e) {
                throw UnknownAtom(e.what(), close.pos);
            }
        }
        return PrimeSequence::distinct({});
    }

    Slot parse_slot() {
        const Token& t = peek();
        if (t.type == Token::Int) {
            next();
            if (!is_prime(t.value))
                throw UnknownAtom("'" + t.text + "' is not prime", t.pos);
            return {t.value, std::nullopt, t.pos};
        }
        if (t.type == Token::Ident && !is_keyword(t.text)) {
            next();
            auto it = env_.find(t.text);
            if (it == env_.end())
                throw UnboundPrimeSequence("'" + t.text + "' is not bound by a let", t.pos);
            if (it->second.kind == PrimeSequence::Kind::Constant)
                return {it->second.constant_p, std::nullopt, t.pos};
            return {0, it->second, t.pos};
        }
        throw SyntaxError("expected a prime or a sequence name", t.pos);
    }

    // "Z", "Z(7)", "Z(2^3)", "Z(8)", "Zinf(p)", "Zp(p)", "Qp(p)", "R", "T".
    // With a sequence in the prime slot this yields a template, not an atom.
    AtomTemplate parse_atom_template() {
        Token head = expect(Token::Ident);
        if (head.text == "R") return AtomTemplate::fixed(Atom::reals());
        if (head.text == "T") return AtomTemplate::fixed(Atom::circle());
        if (head.text == "Z") {
            if (peek().type != Token::LParen) return AtomTemplate::fixed(Atom::integers());
            next();
            AtomTemplate t = parse_cyclic_args();
            expect(Token::RParen);
            return t;
        }
        AtomKind kind;
        if (head.text == "Zinf")
            kind = AtomKind::Pruefer;
        else if (head.text == "Zp")
            kind = AtomKind::PadicIntegers;
        else if (head.text == "Qp")
            kind = AtomKind::PadicRationals;
        else
            throw UnknownAtom("'" + head.text + "' does not name a group", head.pos);
        expect(Token::LParen);
        Slot s = parse_slot();
        expect(Token::RParen);
        if (s.seq) return AtomTemplate::over(kind, *s.seq, 1);
        AtomTemplate t;
        t.kind = kind;
        t.p = s.p;
        return t;
    }

    // Inside "Z( ... )".  Accepts p, p^a, a literal prime power like 8, or a
    // sequence name with optional exponent.
    AtomTemplate parse_cyclic_args() {
        const Token& t = peek();
        if (t.type == Token::Int) {
            next();
            std::uint64_t base = t.value;
            int exp = 1;
            if (peek().type == Token::Caret) {
                next();
                Token e = expect(Token::Int);
                if (e.value < 1 || e.value > 62)
                    throw UnknownAtom("cyclic exponent out of range", e.pos);
                exp = static_cast<int>(e.value);
                if (!is_prime(base))
                    throw UnknownAtom("'" + t.text + "' is not prime", t.pos);
                return AtomTemplate::fixed(Atom::cyclic(Prime(base), exp));
            }
            auto pp = prime_power(base);
            if (!pp)
                throw UnknownAtom("'" + t.text + "' is not a prime power", t.pos);
            return AtomTemplate::fixed(Atom::cyclic(Prime(pp->first), static_cast<int>(pp->second)));
        }
        Slot s = parse_slot();
        int exp = 1;
        if (peek().type == Token::Caret) {
            Token e = (next(), expect(Token::Int));
            if (e.value < 1 || e.value > 62)
                throw UnknownAtom("cyclic exponent out of range", e.pos);
            exp = static_cast<int>(e.value);
        }
        if (s.seq) return AtomTemplate::over(AtomKind::Cyclic, *s.seq, exp);
        return AtomTemplate::fixed(Atom::cyclic(Prime(s.p), exp));
    }

    Atom parse_fixed_atom() {
        Token head = peek();
        AtomTemplate t = parse_atom_template();
        if (t.seq)
            throw SyntaxError("a sequence-templated atom needs an enclosing family", head.pos);
        return t.as_atom();
    }

    Cardinal parse_card() {
        expect(Token::LBracket);
        Cardinal c;
        if (accept_word("inf")) {
            c = Cardinal::inf();
        } else {
            Token v = expect(Token::Int);
            c = Cardinal::finite(v.value);
        }
        expect(Token::RBracket);
        return c;
    }

    GroupExpr parse_family() {
        Token head = expect(Token::Ident);
        Cardinal card = parse_card();
        expect(Token::LParen);
        Token tmpl_pos = peek();
        AtomTemplate tmpl = parse_atom_template();
        if (head.text != "locprod") {
            expect(Token::RParen);
            if (head.text == "dsum") return GroupExpr::dsum(std::move(tmpl), card);
            return GroupExpr::prod(std::move(tmpl), card);
        }
        expect(Token::Comma);
        int b = parse_subdes(tmpl, tmpl_pos.pos);
        expect(Token::RParen);
        return GroupExpr::locprod(std::move(tmpl), b, card);
    }

    // The open subgroup designator of a local product.  "sub(p^b)" names the
    // index-p^b subgroup of the template (for the Pruefer template, the
    // order-p^b one, its annihilator-dual reading).  "Zp(p)" names the p-adic
    // integers inside Qp.  The designator prime must match the template slot.
    int parse_subdes(const AtomTemplate& tmpl, std::size_t tmpl_pos) {
        if (tmpl.kind == AtomKind::Reals || tmpl.kind == AtomKind::Circle ||
            tmpl.kind == AtomKind::Integers)
            throw SyntaxError("local product template must carry a prime", tmpl_pos);
        if (peek().type == Token::Ident && peek().text == "Zp") {
            Token head = next();
            expect(Token::LParen);
            Slot s = parse_slot();
            expect(Token::RParen);
            if (tmpl.kind != AtomKind::PadicRationals)
                throw SyntaxError("Zp designator only pairs with a Qp template", head.pos);
            check_slot_matches(tmpl, s);
            return 0;
        }
        expect_word("sub");
        expect(Token::LParen);
        Slot s = parse_slot();
        expect(Token::Caret);
        Token b = expect(Token::Int);
        expect(Token::RParen);
        if (tmpl.kind == AtomKind::PadicRationals)
            throw SyntaxError("a Qp template takes the Zp(p) designator", s.pos);
        check_slot_matches(tmpl, s);
        if (b.value > 62) throw SyntaxError("sub index out of range", b.pos);
        return static_cast<int>(b.value);
    }

    void check_slot_matches(const AtomTemplate& tmpl, const Slot& s) {
        bool ok;
        if (tmpl.seq)
            ok = s.seq && *s.seq == *tmpl.seq;
        else
            ok = !s.seq && s.p == tmpl.p;
        if (!ok)
            throw SyntaxError("designator prime does not match the template", s.pos);
    }
};

}  // namespace

GroupExpr parse(const std::string& text) { return Parser(text).run(); }

}  // namespace lca
