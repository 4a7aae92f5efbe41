#pragma once

// Random instance generators for the property tests. Everything is driven
// by a caller-owned mt19937_64 so failures reproduce from the seed printed
// by the test.

#include <random>
#include <string>
#include <vector>

#include "spl/context.hpp"
#include "spl/deep.hpp"
#include "spl/formula.hpp"
#include "spl/logic.hpp"
#include "spl/position.hpp"
#include "spl/proof.hpp"
#include "spl/rewrite.hpp"
#include "spl/substitution.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <class T>
const T& choice(Rng& rng, const std::vector<T>& v) {
    return v[pick(rng, 0, static_cast<int>(v.size()) - 1)];
}

inline std::vector<std::string> default_vars() { return {"p", "q"}; }

inline std::vector<spl::Symbol> default_syms() {
    return {spl::Symbol{"a"}, spl::Symbol{"b"}};
}

inline spl::Formula random_formula(Rng& rng,
                                   const std::vector<std::string>& vars,
                                   const std::vector<spl::Symbol>& syms,
                                   int depth) {
    int r = depth <= 0 ? pick(rng, 0, 1) : pick(rng, 0, 5);
    switch (r) {
    case 0:
        return spl::Formula::var(choice(rng, vars));
    case 1:
        // atoms again, with T kept rare so formulas stay interesting
        return pick(rng, 0, 3) == 0 ? spl::Formula::top()
                                    : spl::Formula::var(choice(rng, vars));
    case 2:
    case 3:
        return spl::Formula::dia(choice(rng, syms),
                                 random_formula(rng, vars, syms, depth - 1));
    default:
        return spl::Formula::conj(random_formula(rng, vars, syms, depth - 1),
                                  random_formula(rng, vars, syms, depth - 1));
    }
}

inline spl::Formula random_formula(Rng& rng, int depth = 3) {
    return random_formula(rng, default_vars(), default_syms(), depth);
}

inline spl::Context random_context(Rng& rng, int depth = 2) {
    if (depth <= 0 || pick(rng, 0, 2) == 0) return spl::Context::hole();
    spl::Context inner = random_context(rng, depth - 1);
    switch (pick(rng, 0, 2)) {
    case 0:
        return spl::Context::and_l(inner, random_formula(rng, depth - 1));
    case 1:
        return spl::Context::and_r(random_formula(rng, depth - 1), inner);
    default:
        return spl::Context::dia(choice(rng, default_syms()), inner);
    }
}

inline spl::Substitution random_substitution(Rng& rng) {
    spl::Substitution s;
    for (const std::string& v : default_vars())
        if (pick(rng, 0, 1)) s.set_var(v, random_formula(rng, 2));
    if (pick(rng, 0, 1)) s.set_mod("a", choice(rng, default_syms()));
    return s;
}

// Fills in whatever a left-hand match left unbound, so the instantiation
// covers the schema's right-hand side too.
inline void complete_schema_bindings(Rng& rng, const spl::AxiomSchema& sch,
                                     const spl::LogicSpec& l,
                                     spl::Substitution& sub) {
    for (const std::string& v : sch.lhs.vars())
        if (!sub.var(v)) sub.set_var(v, random_formula(rng, 2));
    for (const std::string& v : sch.rhs.vars())
        if (!sub.var(v)) sub.set_var(v, random_formula(rng, 2));
    auto bind_mods = [&](spl::Formula f) {
        for (const spl::Symbol& s : f.symbols())
            if (l.mod_metavars().count(s.name()) && !sub.mod(s.name()))
                sub.set_mod(s.name(), choice(rng, default_syms()));
    };
    bind_mods(sch.lhs);
    bind_mods(sch.rhs);
}

// A valid proof whose conclusion has the given left-hand side. Recursion is
// bounded by `depth`; at depth 0 only leaves are produced.
inline spl::SequentProof random_proof_from(Rng& rng, const spl::LogicSpec& l,
                                           spl::Formula lhs, int depth) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        switch (pick(rng, 0, 6)) {
        case 0:
            return spl::SequentProof::id(lhs);
        case 1:
            return spl::SequentProof::top_intro(lhs);
        case 2:
            if (lhs.is_and())
                return pick(rng, 0, 1)
                           ? spl::SequentProof::and_e1(lhs.left(), lhs.right())
                           : spl::SequentProof::and_e2(lhs.left(), lhs.right());
            break;
        case 3:
            if (depth > 0 && lhs.is_dia())
                return spl::SequentProof::mono(
                    lhs.label(),
                    random_proof_from(rng, l, lhs.body(), depth - 1));
            break;
        case 4:
            if (depth > 0) {
                spl::SequentProof ab = random_proof_from(rng, l, lhs, depth - 1);
                spl::SequentProof bc = random_proof_from(
                    rng, l, ab.conclusion().rhs, depth - 1);
                return spl::SequentProof::syllogism(ab, bc);
            }
            break;
        case 5:
            if (depth > 0)
                return spl::SequentProof::and_i(
                    random_proof_from(rng, l, lhs, depth - 1),
                    random_proof_from(rng, l, lhs, depth - 1));
            break;
        default:
            for (const spl::AxiomSchema& sch : l.schemata()) {
                spl::Substitution sub;
                if (!spl::match(sch.lhs, lhs, l.mod_metavars(), sub)) continue;
                complete_schema_bindings(rng, sch, l, sub);
                return spl::SequentProof::axiom(l, sch.id, sub);
            }
            break;
        }
    }
    return spl::SequentProof::id(lhs);
}

inline spl::SequentProof random_proof(Rng& rng, const spl::LogicSpec& l,
                                      int depth) {
    return random_proof_from(rng, l, random_formula(rng, 3), depth);
}

// All steps applicable to f at `pos`, instantiating axiom schemata with
// random completions. `size_cap` suppresses the growing rules once f is big.
inline std::vector<spl::DeepStep> applicable_steps(Rng& rng, spl::Formula f,
                                                   const spl::Position& pos,
                                                   const spl::LogicSpec& l,
                                                   int size_cap) {
    spl::Formula sub = spl::subformula_at(f, pos);
    std::vector<spl::DeepStep> out;
    if (f.size() + sub.size() + 1 <= size_cap)
        out.push_back(spl::DeepStep::and_dup(pos));
    if (sub.is_and()) {
        out.push_back(spl::DeepStep::and_e1(pos));
        out.push_back(spl::DeepStep::and_e2(pos));
    }
    if (!sub.is_top()) out.push_back(spl::DeepStep::top_i(pos));
    for (const spl::AxiomSchema& sch : l.schemata()) {
        spl::Substitution s;
        if (!spl::match(sch.lhs, sub, l.mod_metavars(), s)) continue;
        complete_schema_bindings(rng, sch, l, s);
        out.push_back(spl::DeepStep::axiom(pos, sch.id, s));
    }
    return out;
}

// Valid derivation by a bounded random walk from `start`.
inline spl::DeepDerivation random_deep(Rng& rng, const spl::LogicSpec& l,
                                       spl::Formula start, int steps,
                                       int size_cap = 40) {
    spl::DeepDerivation d{{start}, {}};
    for (int i = 0; i < steps; ++i) {
        spl::Formula f = d.last();
        std::vector<spl::Position> ps = spl::all_positions(f);
        std::vector<spl::DeepStep> cands =
            applicable_steps(rng, f, choice(rng, ps), l, size_cap);
        if (cands.empty()) continue;
        spl::DeepStep st = choice(rng, cands);
        d.formulas.push_back(spl::apply_step(f, st, l));
        d.steps.push_back(std::move(st));
    }
    return d;
}

inline spl::RewriteSystem random_system(Rng& rng) {
    std::vector<spl::Symbol> pool = {spl::Symbol{"a"}, spl::Symbol{"b"},
                                     spl::Symbol{"c"}};
    int n = pick(rng, 2, 3);
    std::vector<spl::Symbol> syms(pool.begin(), pool.begin() + n);
    std::set<spl::Symbol> alphabet(syms.begin(), syms.end());
    int rules = pick(rng, 1, 4);
    std::vector<spl::RewriteRule> rs;
    for (int i = 0; i < rules; ++i) {
        spl::Word lhs, rhs;
        do {
            lhs.clear();
            rhs.clear();
            for (int k = pick(rng, 0, 3); k > 0; --k)
                lhs.push_back(choice(rng, syms));
            for (int k = pick(rng, 0, 3); k > 0; --k)
                rhs.push_back(choice(rng, syms));
        } while (lhs.empty() && rhs.empty());
        rs.push_back({"r" + std::to_string(i + 1), lhs, rhs});
    }
    return spl::RewriteSystem(alphabet, rs);
}

inline spl::Word random_word(Rng& rng, const spl::RewriteSystem& r, int len) {
    std::vector<spl::Symbol> syms(r.alphabet().begin(), r.alphabet().end());
    spl::Word w;
    for (int i = 0; i < len; ++i) w.push_back(choice(rng, syms));
    return w;
}

inline spl::RewriteDerivation random_rewrite_derivation(
    Rng& rng, const spl::RewriteSystem& r, int steps, int max_len = 10) {
    spl::RewriteDerivation d;
    d.words.push_back(random_word(rng, r, pick(rng, 1, 4)));
    for (int i = 0; i < steps; ++i) {
        const spl::Word& w = d.words.back();
        std::vector<std::pair<const spl::RewriteRule*, int>> cands;
        for (const spl::RewriteRule& rule : r.rules()) {
            if (rule.lhs.size() > w.size()) continue;
            if (static_cast<int>(w.size() - rule.lhs.size() + rule.rhs.size()) >
                max_len)
                continue;
            for (int off = 0;
                 off <= static_cast<int>(w.size() - rule.lhs.size()); ++off)
                if (std::equal(rule.lhs.begin(), rule.lhs.end(),
                               w.begin() + off))
                    cands.push_back({&rule, off});
        }
        if (cands.empty()) break;
        auto [rule, off] = choice(rng, cands);
        d.words.push_back(spl::apply_rule(w, *rule, off));
        d.steps.push_back({rule->id, off});
    }
    return d;
}

// A block of steps that starts and ends at f: duplicate some subformula,
// optionally mangle the doomed copy (junk may recursively duplicate,
// rewrite, or T out parts of it), then erase it. Returns the steps; the
// formulas are recovered by applying them.
inline std::vector<spl::DeepStep> detour_block(Rng& rng, spl::Formula f,
                                               const spl::LogicSpec& l) {
    spl::Position q = choice(rng, spl::all_positions(f));
    std::vector<spl::DeepStep> steps;
    auto at = [&](spl::Dir d) {
        spl::Position p = q;
        p.push_back(d);
        return p;
    };
    switch (pick(rng, 0, 3)) {
    case 0:
        steps = {spl::DeepStep::and_dup(q), spl::DeepStep::and_e1(q)};
        break;
    case 1:
        steps = {spl::DeepStep::and_dup(q), spl::DeepStep::top_i(at(spl::Dir::Left)),
                 spl::DeepStep::and_e2(q)};
        break;
    case 2:
        steps = {spl::DeepStep::and_dup(q), spl::DeepStep::top_i(at(spl::Dir::Right)),
                 spl::DeepStep::and_e1(q)};
        break;
    default: {
        // junk confined to the left copy, which AndE2 then throws away
        steps.push_back(spl::DeepStep::and_dup(q));
        spl::Formula cur = spl::apply_step(f, steps.back(), l);
        spl::Position doomed = at(spl::Dir::Left);
        for (int k = pick(rng, 1, 3); k > 0; --k) {
            std::vector<spl::Position> inside;
            for (const spl::Position& r :
                 spl::all_positions(spl::subformula_at(cur, doomed)))
                inside.push_back(spl::concat(doomed, r));
            std::vector<spl::DeepStep> cands =
                applicable_steps(rng, cur, choice(rng, inside), l, 60);
            if (cands.empty()) continue;
            steps.push_back(choice(rng, cands));
            cur = spl::apply_step(cur, steps.back(), l);
        }
        steps.push_back(spl::DeepStep::and_e2(q));
        break;
    }
    }
    return steps;
}

// Splices `count` endpoint-preserving detour blocks into d at random
// boundaries. The result stays valid and has the same endpoints.
inline spl::DeepDerivation inject_detours(Rng& rng,
                                          const spl::DeepDerivation& d,
                                          const spl::LogicSpec& l, int count) {
    std::vector<int> cuts;
    for (int i = 0; i < count; ++i)
        cuts.push_back(pick(rng, 0, static_cast<int>(d.length())));
    spl::DeepDerivation out{{d.first()}, {}};
    auto emit = [&](const spl::DeepStep& st) {
        out.formulas.push_back(spl::apply_step(out.last(), st, l));
        out.steps.push_back(st);
    };
    for (std::size_t i = 0; i <= d.length(); ++i) {
        for (int c : cuts)
            if (c == static_cast<int>(i))
                for (const spl::DeepStep& st :
                     detour_block(rng, out.last(), l))
                    emit(st);
        if (i < d.length()) emit(d.steps[i]);
    }
    return out;
}

} // namespace gen
