#include "spl/context.hpp"

#include "spl/error.hpp"

namespace spl {

struct Context::CNode {
    Kind kind;
    // AndL/AndR: the formula on the non-hole side; Dia: unused
    Formula side = Formula::top();
    // Dia: the label
    Symbol label{"a"};
    // child spine; null for Hole
    std::shared_ptr<const CNode> inner;
};

Context Context::hole() {
    static const std::shared_ptr<const CNode> h =
        std::make_shared<CNode>(CNode{Kind::Hole, Formula::top(), Symbol{"a"}, nullptr});
    return Context(h);
}

Context Context::and_l(Context c, Formula right) {
    return Context(std::make_shared<CNode>(
        CNode{Kind::AndL, right, Symbol{"a"}, std::move(c.n_)}));
}

Context Context::and_r(Formula left, Context c) {
    return Context(std::make_shared<CNode>(
        CNode{Kind::AndR, left, Symbol{"a"}, std::move(c.n_)}));
}

Context Context::dia(const Symbol& label, Context c) {
    return Context(std::make_shared<CNode>(
        CNode{Kind::Dia, Formula::top(), label, std::move(c.n_)}));
}

Context Context::dia_word(std::span<const Symbol> word) {
    Context c = hole();
    for (std::size_t i = word.size(); i > 0; --i)
        c = dia(word[i - 1], std::move(c));
    return c;
}

Context Context::at(Formula f, const Position& p) {
    if (p.empty()) return hole();
    Dir d = p.front();
    Position rest(p.begin() + 1, p.end());
    switch (d) {
    case Dir::Left:
        if (!f.is_and()) break;
        return and_l(at(f.left(), rest), f.right());
    case Dir::Right:
        if (!f.is_and()) break;
        return and_r(f.left(), at(f.right(), rest));
    case Dir::Body:
        if (!f.is_dia()) break;
        return dia(f.label(), at(f.body(), rest));
    }
    throw Error("position " + print_position(p) + " not valid in " + f.str());
}

Context::Kind Context::kind() const { return n_->kind; }

Formula Context::side() const {
    if (kind() != Kind::AndL && kind() != Kind::AndR)
        throw Error("side() on a non-conjunction context node");
    return n_->side;
}

Symbol Context::label() const {
    if (kind() != Kind::Dia)
        throw Error("label() on a non-diamond context node");
    return n_->label;
}

Context Context::inner() const {
    if (is_hole())
        throw Error("inner() on a hole");
    return Context(n_->inner);
}

Formula Context::plug(Formula f) const {
    switch (kind()) {
    case Kind::Hole: return f;
    case Kind::AndL: return Formula::conj(Context(n_->inner).plug(f), n_->side);
    case Kind::AndR: return Formula::conj(n_->side, Context(n_->inner).plug(f));
    case Kind::Dia: return Formula::dia(n_->label, Context(n_->inner).plug(f));
    }
    throw Error("corrupt context");
}

int Context::hole_count() const {
    const CNode* n = n_.get();
    int holes = 0;
    while (n) {
        if (n->kind == Kind::Hole) {
            ++holes;
            break;
        }
        n = n->inner.get();
    }
    return holes;
}

Position Context::hole_position() const {
    Position p;
    const CNode* n = n_.get();
    while (n && n->kind != Kind::Hole) {
        switch (n->kind) {
        case Kind::AndL: p.push_back(Dir::Left); break;
        case Kind::AndR: p.push_back(Dir::Right); break;
        case Kind::Dia: p.push_back(Dir::Body); break;
        case Kind::Hole: break;
        }
        n = n->inner.get();
    }
    return p;
}

int Context::depth() const {
    int d = 0;
    for (const CNode* n = n_.get(); n->kind != Kind::Hole; n = n->inner.get())
        ++d;
    return d;
}

std::string Context::str() const {
    switch (kind()) {
    case Kind::Hole: return "[]";
    case Kind::AndL: {
        std::string in = Context(n_->inner).str();
        if (n_->inner->kind == Kind::AndL || n_->inner->kind == Kind::AndR)
            in = "(" + in + ")";
        std::string r = n_->side.str();
        if (n_->side.is_and()) r = "(" + r + ")";
        return in + " & " + r;
    }
    case Kind::AndR: {
        std::string l = n_->side.str();
        std::string in = Context(n_->inner).str();
        if (n_->inner->kind == Kind::AndL || n_->inner->kind == Kind::AndR)
            in = "(" + in + ")";
        return l + " & " + in;
    }
    case Kind::Dia: {
        std::string in = Context(n_->inner).str();
        if (n_->inner->kind == Kind::AndL || n_->inner->kind == Kind::AndR)
            in = "(" + in + ")";
        return "<" + n_->label.name() + ">" + in;
    }
    }
    throw Error("corrupt context");
}

bool Context::operator==(const Context& o) const {
    const CNode* a = n_.get();
    const CNode* b = o.n_.get();
    while (a && b) {
        if (a == b) return true;
        if (a->kind != b->kind) return false;
        switch (a->kind) {
        case Kind::Hole: return true;
        case Kind::AndL:
        case Kind::AndR:
            if (a->side != b->side) return false;
            break;
        case Kind::Dia:
            if (a->label != b->label) return false;
            break;
        }
        a = a->inner.get();
        b = b->inner.get();
    }
    return a == b;
}

Formula plug(const Context& c, Formula f) { return c.plug(f); }

Context compose_contexts(const Context& outer, const Context& inner) {
    if (outer.is_hole()) return inner;
    Context below = compose_contexts(outer.inner(), inner);
    switch (outer.kind()) {
    case Context::Kind::AndL: return Context::and_l(std::move(below), outer.side());
    case Context::Kind::AndR: return Context::and_r(outer.side(), std::move(below));
    case Context::Kind::Dia: return Context::dia(outer.label(), std::move(below));
    default: throw Error("corrupt context");
    }
}

} // namespace spl
