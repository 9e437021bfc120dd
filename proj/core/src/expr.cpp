#include "lca/expr.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lca {

bool atom_kind_needs_prime(AtomKind k) {
    switch (k) {
        case AtomKind::Integers:
        case AtomKind::Reals:
        case AtomKind::Circle: return false;
        default: return true;
    }
}

Atom Atom::cyclic(Prime p, int a) {
    if (a < 1) throw std::invalid_argument("Atom::cyclic: exponent must be >= 1");
    return {AtomKind::Cyclic, p.value, a};
}

bool Atom::is_discrete() const {
    switch (kind) {
        case AtomKind::Integers:
        case AtomKind::Cyclic:
        case AtomKind::Pruefer: return true;
        default: return false;
    }
}

bool Atom::is_compact() const {
    switch (kind) {
        case AtomKind::Circle:
        case AtomKind::Cyclic:  // finite
        case AtomKind::PadicIntegers: return true;
        default: return false;
    }
}

std::strong_ordering atom_order(const Atom& a, const Atom& b) {
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.exponent <=> b.exponent;
}

Atom AtomTemplate::instantiate(std::uint64_t prime) const {
    Atom a;
    a.kind = kind;
    a.p = atom_kind_needs_prime(kind) ? prime : 0;
    a.exponent = kind == AtomKind::Cyclic ? exponent : 0;
    return a;
}

Atom AtomTemplate::as_atom() const {
    if (seq) throw std::logic_error("AtomTemplate::as_atom on a sequence template");
    return instantiate(p);
}

GroupExpr GroupExpr::atom(Atom a) {
    GroupExpr e;
    e.kind_ = ExprKind::Atom;
    e.atom_ = a;
    return e;
}

GroupExpr GroupExpr::sum(std::vector<GroupExpr> parts) {
    std::vector<GroupExpr> flat;
    for (auto& p : parts) {
        if (p.kind_ == ExprKind::Sum)
            flat.insert(flat.end(), p.parts_.begin(), p.parts_.end());
        else
            flat.push_back(std::move(p));
    }
    if (flat.empty()) throw std::invalid_argument("GroupExpr::sum: no parts");
    if (flat.size() == 1) return flat[0];
    std::stable_sort(flat.begin(), flat.end(), [](const GroupExpr& a, const GroupExpr& b) {
        return expr_order(a, b) < 0;
    });
    GroupExpr e;
    e.kind_ = ExprKind::Sum;
    e.parts_ = std::move(flat);
    return e;
}

GroupExpr GroupExpr::dsum(AtomTemplate tmpl, Cardinal card) {
    GroupExpr e;
    e.kind_ = ExprKind::DiscreteSum;
    e.tmpl_ = std::move(tmpl);
    e.card_ = card;
    return e;
}

GroupExpr GroupExpr::prod(AtomTemplate tmpl, Cardinal card) {
    GroupExpr e;
    e.kind_ = ExprKind::Product;
    e.tmpl_ = std::move(tmpl);
    e.card_ = card;
    return e;
}

GroupExpr GroupExpr::locprod(AtomTemplate tmpl, int sub_index, Cardinal card) {
    if (sub_index < 0) throw std::invalid_argument("locprod: negative sub index");
    GroupExpr e;
    e.kind_ = ExprKind::LocalProduct;
    e.tmpl_ = std::move(tmpl);
    e.card_ = card;
    e.sub_index_ = sub_index;
    return e;
}

std::vector<const GroupExpr*> GroupExpr::constituents() const {
    std::vector<const GroupExpr*> out;
    if (kind_ == ExprKind::Sum)
        for (const auto& p : parts_) out.push_back(&p);
    else
        out.push_back(this);
    return out;
}

static std::strong_ordering tmpl_order(const AtomTemplate& a, const AtomTemplate& b) {
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
    if (auto c = a.seq.has_value() <=> b.seq.has_value(); c != 0) return c;
    if (a.seq) {
        if (*a.seq < *b.seq) return std::strong_ordering::less;
        if (*b.seq < *a.seq) return std::strong_ordering::greater;
    } else if (auto c = a.p <=> b.p; c != 0) {
        return c;
    }
    return a.exponent <=> b.exponent;
}

static std::strong_ordering card_order(Cardinal a, Cardinal b) {
    if (auto c = a.infinite <=> b.infinite; c != 0) return c;
    return a.n <=> b.n;
}

std::strong_ordering expr_order(const GroupExpr& a, const GroupExpr& b) {
    if (auto c = static_cast<int>(a.kind()) <=> static_cast<int>(b.kind()); c != 0) return c;
    switch (a.kind()) {
        case ExprKind::Atom: return atom_order(a.as_atom(), b.as_atom());
        case ExprKind::Sum: {
            const auto& x = a.parts();
            const auto& y = b.parts();
            for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
                if (auto c = expr_order(x[i], y[i]); c != 0) return c;
            return x.size() <=> y.size();
        }
        case ExprKind::DiscreteSum:
        case ExprKind::Product:
            if (auto c = tmpl_order(a.tmpl(), b.tmpl()); c != 0) return c;
            return card_order(a.card(), b.card());
        case ExprKind::LocalProduct:
            if (auto c = tmpl_order(a.tmpl(), b.tmpl()); c != 0) return c;
            if (auto c = a.sub_index() <=> b.sub_index(); c != 0) return c;
            return card_order(a.card(), b.card());
    }
    return std::strong_ordering::equal;
}

// ---- rendering --------------------------------------------------------

std::string render(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Integers: return "Z";
        case AtomKind::Reals: return "R";
        case AtomKind::Circle: return "T";
        case AtomKind::Cyclic:
            if (a.exponent == 1) return "Z(" + std::to_string(a.p) + ")";
            return "Z(" + std::to_string(a.p) + "^" + std::to_string(a.exponent) + ")";
        case AtomKind::Pruefer: return "Zinf(" + std::to_string(a.p) + ")";
        case AtomKind::PadicIntegers: return "Zp(" + std::to_string(a.p) + ")";
        case AtomKind::PadicRationals: return "Qp(" + std::to_string(a.p) + ")";
    }
    return "?";
}

namespace {

// Sequence naming for re-emitted let binders.  Avoids the atom keywords.
const char* kSeqNames[] = {"P", "Q", "S", "V", "W"};

struct RenderCtx {
    std::vector<PrimeSequence> seqs;  // first-use order
    std::string name_of(const PrimeSequence& s) {
        for (std::size_t i = 0; i < seqs.size(); ++i)
            if (seqs[i] == s)
                return i < 5 ? kSeqNames[i] : "P" + std::to_string(i);
        seqs.push_back(s);
        std::size_t i = seqs.size() - 1;
        return i < 5 ? kSeqNames[i] : "P" + std::to_string(i);
    }
};

void collect_seqs(const GroupExpr& e, RenderCtx& ctx) {
    switch (e.kind()) {
        case ExprKind::Sum:
            for (const auto& p : e.parts()) collect_seqs(p, ctx);
            break;
        case ExprKind::DiscreteSum:
        case ExprKind::Product:
        case ExprKind::LocalProduct:
            if (e.tmpl().seq) (void)ctx.name_of(*e.tmpl().seq);
            break;
        default: break;
    }
}

std::string render_tmpl(const AtomTemplate& t, RenderCtx& ctx) {
    if (!t.seq) return render(t.as_atom());
    std::string n = ctx.name_of(*t.seq);
    switch (t.kind) {
        case AtomKind::Cyclic:
            if (t.exponent == 1) return "Z(" + n + ")";
            return "Z(" + n + "^" + std::to_string(t.exponent) + ")";
        case AtomKind::Pruefer: return "Zinf(" + n + ")";
        case AtomKind::PadicIntegers: return "Zp(" + n + ")";
        case AtomKind::PadicRationals: return "Qp(" + n + ")";
        default: throw std::logic_error("render: sequence template without prime slot");
    }
}

std::string render_card(Cardinal c) { return "[" + c.str() + "]"; }

std::string prime_slot(const AtomTemplate& t, RenderCtx& ctx) {
    return t.seq ? ctx.name_of(*t.seq) : std::to_string(t.p);
}

std::string render_body(const GroupExpr& e, RenderCtx& ctx) {
    switch (e.kind()) {
        case ExprKind::Atom: return render(e.as_atom());
        case ExprKind::Sum: {
            std::string out;
            for (std::size_t i = 0; i < e.parts().size(); ++i) {
                if (i) out += " + ";
                out += render_body(e.parts()[i], ctx);
            }
            return out;
        }
        case ExprKind::DiscreteSum:
            return "dsum" + render_card(e.card()) + "(" + render_tmpl(e.tmpl(), ctx) + ")";
        case ExprKind::Product:
            return "prod" + render_card(e.card()) + "(" + render_tmpl(e.tmpl(), ctx) + ")";
        case ExprKind::LocalProduct: {
            std::string sub;
            if (e.tmpl().kind == AtomKind::PadicRationals)
                sub = "Zp(" + prime_slot(e.tmpl(), ctx) + ")";
            else
                sub = "sub(" + prime_slot(e.tmpl(), ctx) + "^" + std::to_string(e.sub_index()) + ")";
            return "locprod" + render_card(e.card()) + "(" + render_tmpl(e.tmpl(), ctx) + ", " + sub + ")";
        }
    }
    return "?";
}

}  // namespace

std::string render(const GroupExpr& e) {
    RenderCtx ctx;
    collect_seqs(e, ctx);
    std::string body = render_body(e, ctx);
    std::string out;
    for (std::size_t i = 0; i < ctx.seqs.size(); ++i) {
        const auto& s = ctx.seqs[i];
        std::string name = i < 5 ? kSeqNames[i] : "P" + std::to_string(i);
        out += "let " + name + " = primes distinct";
        if (!s.seed.empty()) {
            out += "(";
            for (std::size_t j = 0; j < s.seed.size(); ++j) {
                if (j) out += ",";
                out += std::to_string(s.seed[j]);
            }
            out += ")";
        }
        out += " in ";
    }
    return out + body;
}

}  // namespace lca
