#include "spl/proof.hpp"

#include <sstream>

#include "spl/error.hpp"

namespace spl {

struct SequentProof::PNode {
    Rule rule;
    Sequent conclusion;
    std::vector<SequentProof> premises;
    std::optional<Symbol> label; // Mono
    std::string schema_id;       // Axiom
    Substitution sub;            // Axiom
};

SequentProof SequentProof::id(Formula a) {
    return make(Rule::Id, Sequent{a, a}, {});
}

SequentProof SequentProof::top_intro(Formula a) {
    return make(Rule::TopIntro, Sequent{a, Formula::top()}, {});
}

SequentProof SequentProof::and_e1(Formula a, Formula b) {
    return make(Rule::AndE1, Sequent{Formula::conj(a, b), a}, {});
}

SequentProof SequentProof::and_e2(Formula a, Formula b) {
    return make(Rule::AndE2, Sequent{Formula::conj(a, b), b}, {});
}

SequentProof SequentProof::syllogism(SequentProof ab, SequentProof bc) {
    Sequent c{ab.conclusion().lhs, bc.conclusion().rhs};
    return make(Rule::Syllogism, c, {std::move(ab), std::move(bc)});
}

SequentProof SequentProof::and_i(SequentProof ab, SequentProof ac) {
    Sequent c{ab.conclusion().lhs,
              Formula::conj(ab.conclusion().rhs, ac.conclusion().rhs)};
    return make(Rule::AndI, c, {std::move(ab), std::move(ac)});
}

SequentProof SequentProof::mono(const Symbol& a, SequentProof p) {
    Sequent c{Formula::dia(a, p.conclusion().lhs),
              Formula::dia(a, p.conclusion().rhs)};
    return make(Rule::Mono, c, {std::move(p)}, a);
}

SequentProof SequentProof::axiom(const LogicSpec& l, const std::string& schema_id,
                                 const Substitution& sub) {
    const AxiomSchema* sch = l.find(schema_id);
    if (!sch)
        throw Error("logic '" + l.name() + "' has no schema '" + schema_id + "'");
    Sequent c{sub.apply(sch->lhs), sub.apply(sch->rhs)};
    return make(Rule::Axiom, c, {}, std::nullopt, schema_id, sub);
}

SequentProof SequentProof::make(Rule r, Sequent conclusion,
                                std::vector<SequentProof> premises,
                                std::optional<Symbol> label,
                                std::string schema_id, Substitution sub) {
    return SequentProof(std::make_shared<PNode>(
        PNode{r, std::move(conclusion), std::move(premises), std::move(label),
              std::move(schema_id), std::move(sub)}));
}

SequentProof::Rule SequentProof::rule() const { return n_->rule; }
const Sequent& SequentProof::conclusion() const { return n_->conclusion; }
const std::vector<SequentProof>& SequentProof::premises() const {
    return n_->premises;
}

const Symbol& SequentProof::label() const {
    if (!n_->label) throw Error("label() on a non-Mono proof node");
    return *n_->label;
}

const std::string& SequentProof::schema_id() const { return n_->schema_id; }
const Substitution& SequentProof::substitution() const { return n_->sub; }

int SequentProof::node_count() const {
    int n = 1;
    for (const auto& p : premises()) n += p.node_count();
    return n;
}

int SequentProof::depth() const {
    int d = 0;
    for (const auto& p : premises()) d = std::max(d, p.depth());
    return d + 1;
}

bool SequentProof::operator==(const SequentProof& o) const {
    if (n_ == o.n_) return true;
    if (rule() != o.rule() || !(conclusion() == o.conclusion())) return false;
    if (rule() == Rule::Mono && !(label() == o.label())) return false;
    if (rule() == Rule::Axiom &&
        (schema_id() != o.schema_id() || !(substitution() == o.substitution())))
        return false;
    if (premises().size() != o.premises().size()) return false;
    for (std::size_t i = 0; i < premises().size(); ++i)
        if (!(premises()[i] == o.premises()[i])) return false;
    return true;
}

const char* rule_name(SequentProof::Rule r) {
    switch (r) {
    case SequentProof::Rule::Id: return "id";
    case SequentProof::Rule::TopIntro: return "top";
    case SequentProof::Rule::Syllogism: return "syll";
    case SequentProof::Rule::AndE1: return "andE1";
    case SequentProof::Rule::AndE2: return "andE2";
    case SequentProof::Rule::AndI: return "andI";
    case SequentProof::Rule::Mono: return "mono";
    case SequentProof::Rule::Axiom: return "axiom";
    }
    return "?";
}

// ---------------------------------------------------------------- checking

namespace {

std::size_t expected_arity(SequentProof::Rule r) {
    switch (r) {
    case SequentProof::Rule::Syllogism:
    case SequentProof::Rule::AndI: return 2;
    case SequentProof::Rule::Mono: return 1;
    default: return 0;
    }
}

Verdict check_node(const SequentProof& p, const LogicSpec& l,
                   std::vector<std::size_t>& path) {
    using Rule = SequentProof::Rule;
    const Sequent& c = p.conclusion();

    auto fail = [&](const std::string& why) {
        return Verdict::fail(std::string(rule_name(p.rule())) + " node '" +
                                 c.str() + "': " + why,
                             path);
    };

    if (p.premises().size() != expected_arity(p.rule()))
        return fail("expected " + std::to_string(expected_arity(p.rule())) +
                    " premises, got " + std::to_string(p.premises().size()));

    switch (p.rule()) {
    case Rule::Id:
        if (c.lhs != c.rhs) return fail("sides differ");
        break;
    case Rule::TopIntro:
        if (!c.rhs.is_top()) return fail("right side is not T");
        break;
    case Rule::AndE1:
        if (!c.lhs.is_and() || c.lhs.left() != c.rhs)
            return fail("not of the form A & B |- A");
        break;
    case Rule::AndE2:
        if (!c.lhs.is_and() || c.lhs.right() != c.rhs)
            return fail("not of the form A & B |- B");
        break;
    case Rule::Syllogism: {
        const Sequent& p1 = p.premises()[0].conclusion();
        const Sequent& p2 = p.premises()[1].conclusion();
        if (p1.rhs != p2.lhs)
            return fail("middle formulas differ: '" + p1.rhs.str() +
                        "' vs '" + p2.lhs.str() + "'");
        if (c.lhs != p1.lhs || c.rhs != p2.rhs)
            return fail("conclusion does not chain the premises");
        break;
    }
    case Rule::AndI: {
        const Sequent& p1 = p.premises()[0].conclusion();
        const Sequent& p2 = p.premises()[1].conclusion();
        if (p1.lhs != p2.lhs) return fail("premises have different left sides");
        if (c.lhs != p1.lhs || !c.rhs.is_and() || c.rhs.left() != p1.rhs ||
            c.rhs.right() != p2.rhs)
            return fail("conclusion is not lhs |- rhs1 & rhs2");
        break;
    }
    case Rule::Mono: {
        const Sequent& pr = p.premises()[0].conclusion();
        const Symbol& a = p.label();
        if (c.lhs != Formula::dia(a, pr.lhs) || c.rhs != Formula::dia(a, pr.rhs))
            return fail("conclusion is not <" + a.name() + ">lhs |- <" +
                        a.name() + ">rhs");
        break;
    }
    case Rule::Axiom: {
        const AxiomSchema* sch = l.find(p.schema_id());
        if (!sch)
            return fail("logic '" + l.name() + "' has no schema '" +
                        p.schema_id() + "'");
        Sequent inst{p.substitution().apply(sch->lhs),
                     p.substitution().apply(sch->rhs)};
        if (!(inst == c))
            return fail("not the recorded instance of schema '" +
                        p.schema_id() + "' (expected '" + inst.str() + "')");
        break;
    }
    }

    for (std::size_t i = 0; i < p.premises().size(); ++i) {
        path.push_back(i);
        Verdict v = check_node(p.premises()[i], l, path);
        if (!v) return v;
        path.pop_back();
    }
    return Verdict::pass();
}

} // namespace

Verdict check_sequent_proof(const SequentProof& p, const LogicSpec& l) {
    std::vector<std::size_t> path;
    return check_node(p, l, path);
}

// ------------------------------------------------- positive replacement

namespace {

// Proof of C(A) |- C(B) from proof of A |- B, by induction on the context
// spine. Conjunction layers use AndI over projections; diamond layers use
// Mono.
SequentProof replace_rec(const SequentProof& p, const Context& c) {
    switch (c.kind()) {
    case Context::Kind::Hole: return p;
    case Context::Kind::Dia:
        return SequentProof::mono(c.label(), replace_rec(p, c.inner()));
    case Context::Kind::AndL: {
        SequentProof rec = replace_rec(p, c.inner()); // X |- Y
        Formula x = rec.conclusion().lhs;
        Formula r = c.side();
        // X&r |- Y  and  X&r |- r  give  X&r |- Y&r
        return SequentProof::and_i(
            SequentProof::syllogism(SequentProof::and_e1(x, r), rec),
            SequentProof::and_e2(x, r));
    }
    case Context::Kind::AndR: {
        SequentProof rec = replace_rec(p, c.inner()); // X |- Y
        Formula x = rec.conclusion().lhs;
        Formula lft = c.side();
        // l&X |- l  and  l&X |- Y  give  l&X |- l&Y
        return SequentProof::and_i(
            SequentProof::and_e1(lft, x),
            SequentProof::syllogism(SequentProof::and_e2(lft, x), rec));
    }
    }
    throw Error("corrupt context");
}

} // namespace

SequentProof positive_replacement(const SequentProof& p, const Context& c,
                                  const LogicSpec& l) {
    if (Verdict v = check_sequent_proof(p, l); !v)
        throw Error("positive_replacement: input proof invalid: " + v.message);
    return replace_rec(p, c);
}

// ---------------------------------------------------- proof substitution

namespace {

SequentProof substitute_rec(const SequentProof& p, const Substitution& s) {
    using Rule = SequentProof::Rule;
    std::vector<SequentProof> prem;
    prem.reserve(p.premises().size());
    for (const auto& q : p.premises()) prem.push_back(substitute_rec(q, s));

    Sequent c = s.apply(p.conclusion());
    switch (p.rule()) {
    case Rule::Mono: {
        Symbol a = p.label();
        if (auto r = s.mod(a.name())) a = *r;
        return SequentProof::make(Rule::Mono, c, std::move(prem), a);
    }
    case Rule::Axiom:
        return SequentProof::make(Rule::Axiom, c, std::move(prem), std::nullopt,
                                  p.schema_id(), p.substitution().compose(s));
    default:
        return SequentProof::make(p.rule(), c, std::move(prem));
    }
}

} // namespace

SequentProof substitute_proof(const SequentProof& p, const Substitution& s,
                              const LogicSpec& l) {
    if (Verdict v = check_sequent_proof(p, l); !v)
        throw Error("substitute_proof: input proof invalid: " + v.message);
    return substitute_rec(p, s);
}

// ------------------------------------------------------------- text form

namespace {

void print_rec(std::ostream& os, const SequentProof& p, int depth) {
    for (int i = 0; i < depth; ++i) os << "  ";
    os << rule_name(p.rule());
    if (p.rule() == SequentProof::Rule::Mono)
        os << ':' << p.label().name();
    if (p.rule() == SequentProof::Rule::Axiom)
        os << ':' << p.schema_id() << '{'
           << print_substitution(p.substitution(), " := ", "; ") << '}';
    os << '(' << p.conclusion() << ")[" << p.premises().size() << "]\n";
    for (const auto& q : p.premises()) print_rec(os, q, depth + 1);
}

struct ProofParser {
    std::vector<std::string> lines;
    std::size_t next = 0;

    SequentProof parse_node() {
        if (next >= lines.size())
            throw ParseError("proof text: missing node (premise count too large?)");
        const std::string& line = lines[next++];

        std::size_t open = line.find('(');
        // the rule token may itself contain '{...}' with '(' inside formulas?
        // No: formulas contain '(' but substitutions live in '{...}' before
        // the conclusion, so find the '(' after the closing '}' if present.
        std::size_t brace = line.find('{');
        if (brace != std::string::npos && brace < open) {
            std::size_t close = line.find('}', brace);
            if (close == std::string::npos)
                throw ParseError("proof text: unterminated '{' in: " + line);
            open = line.find('(', close);
        }
        if (open == std::string::npos)
            throw ParseError("proof text: expected '(conclusion)' in: " + line);

        std::size_t close_paren = line.rfind(')');
        std::size_t lb = line.rfind('[');
        std::size_t rb = line.rfind(']');
        if (close_paren == std::string::npos || lb == std::string::npos ||
            rb == std::string::npos || !(open < close_paren && close_paren < lb && lb < rb))
            throw ParseError("proof text: malformed node line: " + line);

        std::string head = line.substr(0, open);
        // strip indentation
        std::size_t hb = head.find_first_not_of(" \t");
        head = head.substr(hb == std::string::npos ? head.size() : hb);

        Sequent concl = parse_sequent(line.substr(open + 1, close_paren - open - 1));
        std::string count = line.substr(lb + 1, rb - lb - 1);
        if (count.empty() || count.size() > 1 ||
            count.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("proof text: bad premise count '" + count + "'");
        int arity = count[0] - '0';

        using Rule = SequentProof::Rule;
        Rule rule;
        std::optional<Symbol> label;
        std::string schema_id;
        Substitution sub;

        std::size_t colon = head.find(':');
        std::string name = colon == std::string::npos ? head : head.substr(0, colon);
        if (name == "id") rule = Rule::Id;
        else if (name == "top") rule = Rule::TopIntro;
        else if (name == "andE1") rule = Rule::AndE1;
        else if (name == "andE2") rule = Rule::AndE2;
        else if (name == "syll") rule = Rule::Syllogism;
        else if (name == "andI") rule = Rule::AndI;
        else if (name == "mono") rule = Rule::Mono;
        else if (name == "axiom") rule = Rule::Axiom;
        else throw ParseError("proof text: unknown rule '" + name + "'");

        if (rule == Rule::Mono) {
            if (colon == std::string::npos)
                throw ParseError("proof text: mono needs ':<symbol>'");
            label = Symbol(head.substr(colon + 1));
        }
        if (rule == Rule::Axiom) {
            if (colon == std::string::npos)
                throw ParseError("proof text: axiom needs ':<schema-id>'");
            std::string rest = head.substr(colon + 1);
            std::size_t br = rest.find('{');
            if (br == std::string::npos || rest.back() != '}')
                throw ParseError("proof text: axiom needs '{bindings}'");
            schema_id = rest.substr(0, br);
            sub = parse_substitution(rest.substr(br + 1, rest.size() - br - 2),
                                     ":=", ';');
        }

        std::vector<SequentProof> prem;
        prem.reserve(arity);
        for (int i = 0; i < arity; ++i) prem.push_back(parse_node());
        return SequentProof::make(rule, concl, std::move(prem), label,
                                  schema_id, sub);
    }
};

} // namespace

std::string print_proof(const SequentProof& p) {
    std::ostringstream os;
    print_rec(os, p, 0);
    return os.str();
}

SequentProof parse_proof(const std::string& text) {
    ProofParser pp;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        pp.lines.push_back(line);
    }
    if (pp.lines.empty()) throw ParseError("proof text: empty input");
    SequentProof p = pp.parse_node();
    if (pp.next != pp.lines.size())
        throw ParseError("proof text: trailing lines after the proof tree");
    return p;
}

} // namespace spl
