#include "lca/validate.hpp"

namespace lca {
namespace {

bool template_discrete(const AtomTemplate& t) {
    switch (t.kind) {
        case AtomKind::Integers:
        case AtomKind::Cyclic:
        case AtomKind::Pruefer: return true;
        default: return false;
    }
}

bool template_compact(const AtomTemplate& t) {
    switch (t.kind) {
        case AtomKind::Circle:
        case AtomKind::Cyclic:
        case AtomKind::PadicIntegers: return true;
        default: return false;
    }
}

void check_constituent(const GroupExpr& e, const std::string& path,
                       std::vector<Violation>& out) {
    switch (e.kind()) {
        case ExprKind::Atom:
            return;
        case ExprKind::Sum:
            for (std::size_t i = 0; i < e.parts().size(); ++i)
                check_constituent(e.parts()[i], path + ".parts[" + std::to_string(i) + "]", out);
            return;
        case ExprKind::DiscreteSum:
            if (e.card().infinite) {
                if (e.tmpl().kind == AtomKind::Circle)
                    out.push_back({path, "infinite discrete sum of circles is outside the class"});
                else if (!template_discrete(e.tmpl()))
                    out.push_back({path, "infinite discrete sum of non-discrete atom"});
            }
            return;
        case ExprKind::Product:
            if (e.card().infinite) {
                if (e.tmpl().kind == AtomKind::Circle)
                    out.push_back({path, "infinite product of circles is outside the class"});
                else if (!template_compact(e.tmpl()))
                    out.push_back({path, "infinite product of non-compact atom"});
            }
            return;
        case ExprKind::LocalProduct:
            if (e.tmpl().kind == AtomKind::Cyclic && e.sub_index() > e.tmpl().exponent)
                out.push_back({path, "sub index exceeds the cyclic exponent"});
            return;
    }
}

}  // namespace

ValidationReport validate(const GroupExpr& e) {
    ValidationReport r;
    check_constituent(e, "$", r.violations);
    return r;
}

}  // namespace lca
