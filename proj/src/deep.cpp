#include "spl/deep.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "spl/error.hpp"

namespace spl {

const char* deep_rule_name(DeepRule r) {
    switch (r) {
        case DeepRule::AndDup: return "andDup";
        case DeepRule::AndE1:  return "andE1";
        case DeepRule::AndE2:  return "andE2";
        case DeepRule::TopI:   return "topI";
        case DeepRule::Axiom:  return "axiom";
    }
    return "?";
}

DeepStep DeepStep::and_dup(Position p) { return {std::move(p), DeepRule::AndDup, {}, {}}; }
DeepStep DeepStep::and_e1(Position p)  { return {std::move(p), DeepRule::AndE1, {}, {}}; }
DeepStep DeepStep::and_e2(Position p)  { return {std::move(p), DeepRule::AndE2, {}, {}}; }
DeepStep DeepStep::top_i(Position p)   { return {std::move(p), DeepRule::TopI, {}, {}}; }

DeepStep DeepStep::axiom(Position p, std::string schema_id, Substitution sub) {
    return {std::move(p), DeepRule::Axiom, std::move(schema_id), std::move(sub)};
}

namespace {

const AxiomSchema& need_schema(const LogicSpec& l, const std::string& id) {
    const AxiomSchema* sch = l.find(id);
    if (!sch)
        throw Error("logic '" + l.name() + "' has no schema '" + id + "'");
    return *sch;
}

void collect_meta_labels(Formula f, const LogicSpec& l,
                         std::set<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Var:
        case Formula::Kind::Top:
            return;
        case Formula::Kind::And:
            collect_meta_labels(f.left(), l, out);
            collect_meta_labels(f.right(), l, out);
            return;
        case Formula::Kind::Dia:
            if (l.mod_metavars().count(f.label().name()))
                out.insert(f.label().name());
            collect_meta_labels(f.body(), l, out);
            return;
    }
}

// An Axiom step must pin down the whole instance: every schema variable and
// every metavariable label of the schema needs a binding.
void need_complete_sub(const AxiomSchema& sch, const Substitution& sub,
                       const LogicSpec& l) {
    std::set<std::string> vs = sch.lhs.vars();
    sch.rhs.collect_vars(vs);
    for (const std::string& v : vs)
        if (!sub.var(v))
            throw Error("axiom " + sch.id + ": variable '" + v + "' unbound");
    std::set<std::string> ms;
    collect_meta_labels(sch.lhs, l, ms);
    collect_meta_labels(sch.rhs, l, ms);
    for (const std::string& m : ms)
        if (!sub.mod(m))
            throw Error("axiom " + sch.id + ": modality <" + m + "> unbound");
}

} // namespace

Formula apply_step(Formula f, const DeepStep& st, const LogicSpec& l) {
    Formula s = subformula_at(f, st.pos);
    Formula out = Formula::top();
    switch (st.rule) {
        case DeepRule::AndDup:
            out = Formula::conj(s, s);
            break;
        case DeepRule::AndE1:
        case DeepRule::AndE2:
            if (!s.is_and())
                throw Error(std::string(deep_rule_name(st.rule)) +
                            ": redex is not a conjunction: " + s.str());
            out = st.rule == DeepRule::AndE1 ? s.left() : s.right();
            break;
        case DeepRule::TopI:
            break;
        case DeepRule::Axiom: {
            const AxiomSchema& sch = need_schema(l, st.schema_id);
            need_complete_sub(sch, st.sub, l);
            Formula want = st.sub.apply(sch.lhs);
            if (s != want)
                throw Error("axiom " + st.schema_id + ": redex " + s.str() +
                            " is not the recorded instance " + want.str());
            out = st.sub.apply(sch.rhs);
            break;
        }
    }
    return replace_at(f, st.pos, out);
}

Verdict check_deep(const DeepDerivation& d, const LogicSpec& l) {
    if (d.formulas.empty())
        return Verdict::fail("derivation has no formulas");
    if (d.formulas.size() != d.steps.size() + 1)
        return Verdict::fail("derivation has " + std::to_string(d.formulas.size()) +
                             " formulas for " + std::to_string(d.steps.size()) +
                             " steps");
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        Formula got = d.formulas[i];
        try {
            got = apply_step(d.formulas[i], d.steps[i], l);
        } catch (const Error& e) {
            return Verdict::fail(e.what(), {}, static_cast<long>(i));
        }
        if (got != d.formulas[i + 1])
            return Verdict::fail("step yields " + got.str() +
                                 " but the derivation records " +
                                 d.formulas[i + 1].str(),
                                 {}, static_cast<long>(i));
    }
    return Verdict::pass();
}

DeepDerivation context_lift(const DeepDerivation& d, const Context& c) {
    DeepDerivation out;
    out.formulas.reserve(d.formulas.size());
    for (Formula f : d.formulas) out.formulas.push_back(c.plug(f));
    Position at = c.hole_position();
    out.steps.reserve(d.steps.size());
    for (const DeepStep& st : d.steps) {
        DeepStep moved = st;
        moved.pos = concat(at, st.pos);
        out.steps.push_back(std::move(moved));
    }
    return out;
}

DeepDerivation concat_derivations(DeepDerivation head, const DeepDerivation& tail) {
    if (head.formulas.empty() || tail.formulas.empty())
        throw Error("concat_derivations: empty derivation");
    if (head.last() != tail.first())
        throw Error("concat_derivations: " + head.last().str() + " vs " +
                    tail.first().str());
    head.formulas.insert(head.formulas.end(), tail.formulas.begin() + 1,
                         tail.formulas.end());
    head.steps.insert(head.steps.end(), tail.steps.begin(), tail.steps.end());
    return head;
}

namespace {

DeepDerivation seq_to_deep_rec(const SequentProof& p, const LogicSpec& l) {
    const Sequent& c = p.conclusion();
    switch (p.rule()) {
        case SequentProof::Rule::Id:
            return {{c.lhs}, {}};
        case SequentProof::Rule::TopIntro:
            return {{c.lhs, Formula::top()}, {DeepStep::top_i({})}};
        case SequentProof::Rule::AndE1:
            return {{c.lhs, c.rhs}, {DeepStep::and_e1({})}};
        case SequentProof::Rule::AndE2:
            return {{c.lhs, c.rhs}, {DeepStep::and_e2({})}};
        case SequentProof::Rule::Axiom:
            return {{c.lhs, c.rhs},
                    {DeepStep::axiom({}, p.schema_id(), p.substitution())}};
        case SequentProof::Rule::Mono:
            return context_lift(seq_to_deep_rec(p.premises()[0], l),
                                Context::dia(p.label(), Context::hole()));
        case SequentProof::Rule::Syllogism:
            return concat_derivations(seq_to_deep_rec(p.premises()[0], l),
                                      seq_to_deep_rec(p.premises()[1], l));
        case SequentProof::Rule::AndI: {
            // From C |- A and C |- B: C, C&C, ..., A&C, ..., A&B.
            Formula start = c.lhs;
            Formula a = p.premises()[0].conclusion().rhs;
            DeepDerivation out{{start, Formula::conj(start, start)},
                               {DeepStep::and_dup({})}};
            out = concat_derivations(
                std::move(out),
                context_lift(seq_to_deep_rec(p.premises()[0], l),
                             Context::and_l(Context::hole(), start)));
            return concat_derivations(
                std::move(out),
                context_lift(seq_to_deep_rec(p.premises()[1], l),
                             Context::and_r(a, Context::hole())));
        }
    }
    throw Error("seq_to_deep: unreachable rule");
}

} // namespace

DeepDerivation seq_to_deep(const SequentProof& p, const LogicSpec& l) {
    if (Verdict v = check_sequent_proof(p, l); !v)
        throw Error("seq_to_deep: input proof invalid: " + v.message);
    return seq_to_deep_rec(p, l);
}

namespace {

// The one-step sequent proof of redex |- contractum.
SequentProof local_step_proof(Formula redex, const DeepStep& st,
                              const LogicSpec& l) {
    switch (st.rule) {
        case DeepRule::AndDup:
            return SequentProof::and_i(SequentProof::id(redex),
                                       SequentProof::id(redex));
        case DeepRule::AndE1:
            return SequentProof::and_e1(redex.left(), redex.right());
        case DeepRule::AndE2:
            return SequentProof::and_e2(redex.left(), redex.right());
        case DeepRule::TopI:
            return SequentProof::top_intro(redex);
        case DeepRule::Axiom:
            return SequentProof::axiom(l, st.schema_id, st.sub);
    }
    throw Error("deep_to_seq: unreachable rule");
}

} // namespace

SequentProof deep_to_seq(const DeepDerivation& d, const LogicSpec& l) {
    if (Verdict v = check_deep(d, l); !v)
        throw Error("deep_to_seq: input derivation invalid: " + v.message);
    std::optional<SequentProof> acc;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const DeepStep& st = d.steps[i];
        Formula redex = subformula_at(d.formulas[i], st.pos);
        SequentProof one = positive_replacement(
            local_step_proof(redex, st, l), Context::at(d.formulas[i], st.pos), l);
        acc = acc ? SequentProof::syllogism(std::move(*acc), std::move(one))
                  : std::move(one);
    }
    return acc ? *acc : SequentProof::id(d.first());
}

namespace {

void var_positions_rec(Formula f, const std::string& name, Position& cur,
                       std::vector<Position>& out) {
    switch (f.kind()) {
        case Formula::Kind::Var:
            if (f.var_name() == name) out.push_back(cur);
            return;
        case Formula::Kind::Top:
            return;
        case Formula::Kind::And:
            cur.push_back(Dir::Left);
            var_positions_rec(f.left(), name, cur, out);
            cur.back() = Dir::Right;
            var_positions_rec(f.right(), name, cur, out);
            cur.pop_back();
            return;
        case Formula::Kind::Dia:
            cur.push_back(Dir::Body);
            var_positions_rec(f.body(), name, cur, out);
            cur.pop_back();
            return;
    }
}

std::vector<Position> var_positions(Formula pattern, const std::string& name) {
    std::vector<Position> out;
    Position cur;
    var_positions_rec(pattern, name, cur, out);
    return out;
}

} // namespace

std::set<Position> step_residuals(Formula f, const DeepStep& st,
                                  const Position& q, const LogicSpec& l) {
    if (!try_subformula_at(f, q))
        throw Error("step_residuals: position is not in the formula");
    const Position& p = st.pos;
    if (disjoint(p, q)) return {q};
    if (!is_prefix(p, q))
        throw Error("step_residuals: occurrence strictly above the redex");
    Position rest(q.begin() + static_cast<long>(p.size()), q.end());
    switch (st.rule) {
        case DeepRule::AndDup: {
            std::set<Position> out;
            for (Dir side : {Dir::Left, Dir::Right}) {
                Position r = p;
                r.push_back(side);
                r.insert(r.end(), rest.begin(), rest.end());
                out.insert(std::move(r));
            }
            return out;
        }
        case DeepRule::AndE1:
        case DeepRule::AndE2: {
            Dir keep = st.rule == DeepRule::AndE1 ? Dir::Left : Dir::Right;
            if (rest.empty() || rest.front() != keep) return {};
            Position r = p;
            r.insert(r.end(), rest.begin() + 1, rest.end());
            return {std::move(r)};
        }
        case DeepRule::TopI:
            return {};
        case DeepRule::Axiom: {
            const AxiomSchema& sch = need_schema(l, st.schema_id);
            for (const std::string& name : sch.lhs.vars()) {
                for (const Position& vp : var_positions(sch.lhs, name)) {
                    if (!is_prefix(vp, rest)) continue;
                    // q sits inside this occurrence's value; it survives at
                    // the same offset under every right-hand occurrence.
                    Position within(rest.begin() + static_cast<long>(vp.size()),
                                    rest.end());
                    std::set<Position> out;
                    for (const Position& rp : var_positions(sch.rhs, name)) {
                        Position r = p;
                        r.insert(r.end(), rp.begin(), rp.end());
                        r.insert(r.end(), within.begin(), within.end());
                        out.insert(std::move(r));
                    }
                    return out;
                }
            }
            return {};
        }
    }
    throw Error("step_residuals: unreachable rule");
}

namespace {

// Re-derives an Axiom step against a rewritten redex. Bindings the match
// does not determine (right-only metavariables) are carried over.
DeepStep rebuild_axiom(const DeepStep& st, Formula redex, const LogicSpec& l) {
    const AxiomSchema& sch = need_schema(l, st.schema_id);
    Substitution sub;
    if (!match(sch.lhs, redex, l.mod_metavars(), sub))
        throw Error("internal: rebuilt axiom step " + st.schema_id +
                    " does not match " + redex.str());
    for (const auto& [name, val] : st.sub.var_map())
        if (!sub.var(name)) sub.set_var(name, val);
    for (const auto& [name, sym] : st.sub.mod_map())
        if (!sub.mod(name)) sub.set_mod(name, sym);
    return DeepStep::axiom(st.pos, st.schema_id, std::move(sub));
}

Formula replace_all(Formula f, const std::set<Position>& at, Formula g) {
    for (const Position& p : at) f = replace_at(f, p, g);
    return f;
}

} // namespace

DeepDerivation eliminate_top(const DeepDerivation& d, const LogicSpec& l) {
    if (Verdict v = check_deep(d, l); !v)
        throw Error("eliminate_top: input derivation invalid: " + v.message);
    if (d.first().contains_top() || d.last().contains_top())
        throw Error("eliminate_top: endpoints must not contain T");
    if (!l.is_word_style())
        throw Error("eliminate_top: logic '" + l.name() + "' is not word-style");

    DeepDerivation cur = d;
    for (;;) {
        std::size_t k = cur.steps.size();
        for (std::size_t i = 0; i < cur.steps.size(); ++i)
            if (cur.steps[i].rule == DeepRule::TopI) { k = i; break; }
        if (k == cur.steps.size()) break;

        // The step turns C(A1) into C(T); every downstream residual of that
        // T gets A1 back, which erases the step.
        const Position at = cur.steps[k].pos;
        const Formula a1 = subformula_at(cur.formulas[k], at);

        DeepDerivation next;
        next.formulas.assign(cur.formulas.begin(),
                             cur.formulas.begin() + static_cast<long>(k) + 1);
        next.steps.assign(cur.steps.begin(),
                          cur.steps.begin() + static_cast<long>(k));

        std::set<Position> marks{at};
        for (std::size_t i = k + 1; i < cur.steps.size(); ++i) {
            const DeepStep& st = cur.steps[i];
            // Marks hold T leaves, so a redex is never strictly below one
            // and the step carries over; only Axiom instances see different
            // subtrees and need re-matching.
            DeepStep moved = st;
            if (st.rule == DeepRule::Axiom)
                moved = rebuild_axiom(
                    st, subformula_at(next.formulas.back(), st.pos), l);
            Formula g = apply_step(next.formulas.back(), moved, l);

            std::set<Position> fwd;
            for (const Position& q : marks) {
                std::set<Position> r = step_residuals(cur.formulas[i], st, q, l);
                fwd.insert(r.begin(), r.end());
            }
            marks = std::move(fwd);
            Formula expect = replace_all(cur.formulas[i + 1], marks, a1);
            if (g != expect)
                throw Error("internal: T-removal built " + g.str() +
                            " where " + expect.str() + " was expected");
            next.formulas.push_back(g);
            next.steps.push_back(std::move(moved));
        }
        cur = std::move(next);
    }
    if (Verdict v = check_deep(cur, l); !v)
        throw Error("internal: T-removal output invalid: " + v.message);
    return cur;
}

namespace {

bool is_word_formula(Formula f) {
    while (f.is_dia()) f = f.body();
    return f.is_var();
}

// A redex with only diamonds above it; such positions have all-body paths.
bool spine_position(const Position& p) {
    return std::all_of(p.begin(), p.end(),
                       [](Dir d) { return d == Dir::Body; });
}

} // namespace

DeepDerivation eliminate_conjunction(const DeepDerivation& d, const LogicSpec& l) {
    if (Verdict v = check_deep(d, l); !v)
        throw Error("eliminate_conjunction: input derivation invalid: " +
                    v.message);
    if (!is_word_formula(d.first()) || !is_word_formula(d.last()))
        throw Error("eliminate_conjunction: endpoints must be word formulas");
    for (const DeepStep& st : d.steps)
        if (st.rule == DeepRule::TopI)
            throw Error("eliminate_conjunction: derivation has a topI step");
    if (!l.is_word_style())
        throw Error("eliminate_conjunction: logic '" + l.name() +
                    "' is not word-style");

    DeepDerivation cur = d;
    for (;;) {
        // Last duplication whose conjunction has nothing but diamonds above
        // it. Such a step exists whenever any duplication does: the first
        // one acts on a conjunction-free formula.
        std::size_t j = cur.steps.size();
        bool any_dup = false;
        for (std::size_t i = 0; i < cur.steps.size(); ++i) {
            if (cur.steps[i].rule != DeepRule::AndDup) continue;
            any_dup = true;
            if (spine_position(cur.steps[i].pos)) j = i;
        }
        if (!any_dup) break;
        if (j == cur.steps.size())
            throw Error("internal: duplications exist but none is outermost");

        // Follow the introduced conjunction to the step that erases one
        // side. Steps inside a conjunct are recorded with their in-conjunct
        // path; steps on the diamond spine above (word axioms) shift the
        // conjunction and are replayed afterwards.
        Position q = cur.steps[j].pos;
        struct InnerStep {
            Position within;
            DeepStep st;
        };
        std::vector<InnerStep> inner[2];
        std::vector<DeepStep> outer;
        std::size_t erase_at = cur.steps.size();
        int survivor = -1;

        for (std::size_t i = j + 1; i < cur.steps.size(); ++i) {
            const DeepStep& st = cur.steps[i];
            const Position& p = st.pos;
            bool handled = false;
            for (int side = 0; side < 2 && !handled; ++side) {
                Position qs = q;
                qs.push_back(side == 0 ? Dir::Left : Dir::Right);
                if (!is_prefix(qs, p)) continue;
                inner[side].push_back(
                    {Position(p.begin() + static_cast<long>(qs.size()), p.end()),
                     st});
                handled = true;
            }
            if (handled) continue;
            if (p == q && st.rule == DeepRule::AndE1) { survivor = 0; erase_at = i; break; }
            if (p == q && st.rule == DeepRule::AndE2) { survivor = 1; erase_at = i; break; }
            if (is_prefix(p, q)) {
                if (st.rule == DeepRule::AndDup)
                    throw Error("internal: a conjunction was introduced above "
                                "the tracked one before it was eliminated");
                if (st.rule != DeepRule::Axiom)
                    throw Error("internal: non-axiom step on the diamond "
                                "spine above the tracked conjunction");
                std::set<Position> r = step_residuals(cur.formulas[i], st, q, l);
                if (r.size() != 1)
                    throw Error("internal: tracked conjunction has " +
                                std::to_string(r.size()) + " residuals");
                q = *r.begin();
                outer.push_back(st);
                continue;
            }
            throw Error("internal: step neither on the spine nor inside the "
                        "tracked conjunction");
        }
        if (erase_at == cur.steps.size())
            throw Error("internal: tracked conjunction survives to the end");

        // gammaC, gamma(C&C), ..., delta(C1&C2), delta(Ci) collapses to
        // gammaC, ..., gammaCi, ..., delta(Ci).
        const Position plug_at = cur.steps[j].pos;
        DeepDerivation next;
        next.formulas.assign(cur.formulas.begin(),
                             cur.formulas.begin() + static_cast<long>(j) + 1);
        next.steps.assign(cur.steps.begin(),
                          cur.steps.begin() + static_cast<long>(j));
        for (const InnerStep& in : inner[survivor]) {
            DeepStep moved = in.st;
            moved.pos = concat(plug_at, in.within);
            Formula g = apply_step(next.formulas.back(), moved, l);
            next.steps.push_back(std::move(moved));
            next.formulas.push_back(g);
        }
        for (const DeepStep& st : outer) {
            DeepStep moved = rebuild_axiom(
                st, subformula_at(next.formulas.back(), st.pos), l);
            Formula g = apply_step(next.formulas.back(), moved, l);
            next.steps.push_back(std::move(moved));
            next.formulas.push_back(g);
        }
        if (next.formulas.back() != cur.formulas[erase_at + 1])
            throw Error("internal: conjunction removal built " +
                        next.formulas.back().str() + " where " +
                        cur.formulas[erase_at + 1].str() + " was expected");
        next.formulas.insert(next.formulas.end(),
                             cur.formulas.begin() + static_cast<long>(erase_at) + 2,
                             cur.formulas.end());
        next.steps.insert(next.steps.end(),
                          cur.steps.begin() + static_cast<long>(erase_at) + 1,
                          cur.steps.end());
        cur = std::move(next);
    }

    for (const DeepStep& st : cur.steps)
        if (st.rule != DeepRule::Axiom)
            throw Error("internal: non-axiom step left after conjunction "
                        "removal");
    if (Verdict v = check_deep(cur, l); !v)
        throw Error("internal: conjunction removal output invalid: " + v.message);
    return cur;
}

std::string print_deep_derivation(const DeepDerivation& d,
                                  const std::string& logic_ref) {
    std::ostringstream os;
    os << "logic: " << logic_ref << "\n";
    for (std::size_t i = 0; i < d.formulas.size(); ++i) {
        os << "formula: " << d.formulas[i].str() << "\n";
        if (i >= d.steps.size()) continue;
        const DeepStep& st = d.steps[i];
        os << "step: " << deep_rule_name(st.rule) << " @ "
           << print_position(st.pos);
        if (st.rule == DeepRule::Axiom) {
            os << " [schema=" << st.schema_id;
            if (!st.sub.empty())
                os << " sub=" << print_substitution(st.sub, "=", ",");
            os << "]";
        }
        os << "\n";
    }
    return os.str();
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

DeepStep parse_step_line(const std::string& body, int lineno) {
    auto fail = [lineno](const std::string& msg) -> void {
        throw ParseError("derivation text, line " + std::to_string(lineno) + ": " +
                    msg);
    };
    std::string head = strip(body);
    std::string attrs;
    if (!head.empty() && head.back() == ']') {
        std::size_t lb = head.find('[');
        if (lb == std::string::npos) fail("']' without '['");
        attrs = strip(head.substr(lb + 1, head.size() - lb - 2));
        head = strip(head.substr(0, lb));
    }
    std::size_t at = head.find('@');
    if (at == std::string::npos) fail("step needs `<rule> @ <position>`");
    std::string rule_tok = strip(head.substr(0, at));
    Position pos = parse_position(strip(head.substr(at + 1)));

    DeepRule rule = DeepRule::AndDup;
    if (rule_tok == "andDup")      rule = DeepRule::AndDup;
    else if (rule_tok == "andE1")  rule = DeepRule::AndE1;
    else if (rule_tok == "andE2")  rule = DeepRule::AndE2;
    else if (rule_tok == "topI")   rule = DeepRule::TopI;
    else if (rule_tok == "axiom")  rule = DeepRule::Axiom;
    else fail("unknown step rule '" + rule_tok + "'");

    if (rule != DeepRule::Axiom) {
        if (!attrs.empty()) fail("rule '" + rule_tok + "' takes no attributes");
        return {std::move(pos), rule, {}, {}};
    }
    if (attrs.rfind("schema=", 0) != 0) fail("axiom step needs [schema=<id> ...]");
    std::size_t sp = attrs.find(' ');
    std::string id = attrs.substr(7, sp == std::string::npos ? std::string::npos
                                                             : sp - 7);
    if (id.empty()) fail("empty schema id");
    Substitution sub;
    if (sp != std::string::npos) {
        std::string rest = strip(attrs.substr(sp + 1));
        if (rest.rfind("sub=", 0) != 0) fail("expected sub=<bindings>");
        sub = parse_substitution(rest.substr(4), "=", ',');
    }
    return DeepStep::axiom(std::move(pos), std::move(id), std::move(sub));
}

} // namespace

std::pair<DeepDerivation, std::string> parse_deep_derivation(
    const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string logic_ref;
    bool saw_logic = false;
    bool expect_formula = true;
    DeepDerivation d;
    int lineno = 0;
    auto fail = [&lineno](const std::string& msg) -> void {
        throw ParseError("derivation text, line " + std::to_string(lineno) + ": " +
                    msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        if (!saw_logic) {
            if (s.rfind("logic:", 0) != 0) fail("expected a `logic:` header");
            logic_ref = strip(s.substr(6));
            if (logic_ref.empty()) fail("empty logic reference");
            saw_logic = true;
            continue;
        }
        if (s.rfind("formula:", 0) == 0) {
            if (!expect_formula) fail("expected a `step:` line");
            d.formulas.push_back(parse_formula(s.substr(8)));
            expect_formula = false;
            continue;
        }
        if (s.rfind("step:", 0) == 0) {
            if (expect_formula) fail("expected a `formula:` line");
            d.steps.push_back(parse_step_line(s.substr(5), lineno));
            expect_formula = true;
            continue;
        }
        fail("unrecognized line '" + s + "'");
    }
    if (!saw_logic) throw ParseError("derivation text: missing `logic:` header");
    if (d.formulas.empty()) throw ParseError("derivation text: no formulas");
    if (expect_formula)
        throw ParseError("derivation text: ends after a step, formula missing");
    return {std::move(d), std::move(logic_ref)};
}

} // namespace spl
