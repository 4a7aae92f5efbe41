#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spl/context.hpp"
#include "spl/logic.hpp"
#include "spl/position.hpp"
#include "spl/proof.hpp"

namespace spl {

// Rules that rewrite a single subformula in place:
//   AndDup   A      =>  A & A
//   AndE1    A & B  =>  A
//   AndE2    A & B  =>  B
//   TopI     A      =>  T
//   Axiom    an instance of a schema of the logic, lhs => rhs
enum class DeepRule : std::uint8_t { AndDup, AndE1, AndE2, TopI, Axiom };

const char* deep_rule_name(DeepRule r);

// One rewrite. `pos` addresses the redex root (the subformula the rule
// consumes) in the formula the step is applied to. Axiom steps record the
// schema and the full instantiation: every variable of the schema and every
// modality metavariable occurring in it must be bound.
struct DeepStep {
    Position pos;
    DeepRule rule = DeepRule::AndDup;
    std::string schema_id;
    Substitution sub;

    static DeepStep and_dup(Position p);
    static DeepStep and_e1(Position p);
    static DeepStep and_e2(Position p);
    static DeepStep top_i(Position p);
    static DeepStep axiom(Position p, std::string schema_id, Substitution sub);

    bool operator==(const DeepStep&) const = default;
};

// A chain of formulas where each is obtained from the previous one by the
// recorded step. Always nonempty; |steps| = |formulas| - 1.
struct DeepDerivation {
    std::vector<Formula> formulas;
    std::vector<DeepStep> steps;

    Formula first() const { return formulas.front(); }
    Formula last() const { return formulas.back(); }
    std::size_t length() const { return steps.size(); }

    bool operator==(const DeepDerivation&) const = default;
};

// Rewrites the subformula of f at st.pos. Throws Error when the position is
// invalid, the subformula does not match the rule's premise shape, or the
// Axiom instantiation is unknown/incomplete/mismatched.
Formula apply_step(Formula f, const DeepStep& st, const LogicSpec& l);

// Valid iff the shape invariant holds and apply_step reproduces each
// formula from its predecessor. Reports the first failing step index.
Verdict check_deep(const DeepDerivation& d, const LogicSpec& l);

// Runs every formula through plug(c, .) and prefixes every step position
// with c's hole position. Preserves validity and step count.
DeepDerivation context_lift(const DeepDerivation& d, const Context& c);

// Appends `tail` to `head`; requires head.last() == tail.first().
DeepDerivation concat_derivations(DeepDerivation head, const DeepDerivation& tail);

// A proof of A |- B becomes a derivation from A to B: axiom-form leaves give
// one step, Syllogism concatenates, Mono lifts through <a>[], and AndI over
// C |- A and C |- B goes C, C&C, ..., A&C, ..., A&B (left branch lifted
// through []&C first, then the right branch through A&[]).
// Throws Error if p does not check.
DeepDerivation seq_to_deep(const SequentProof& p, const LogicSpec& l);

// A derivation from A to B becomes a proof of A |- B: each step's local
// rewrite has a small proof (AndDup via AndI over Id, AndE/TopI/Axiom via
// the axiom forms), positive_replacement pushes it under the step's context,
// and Syllogism chains the results. Throws Error if d does not check.
SequentProof deep_to_seq(const DeepDerivation& d, const LogicSpec& l);

// Where the subformula occurrence at q survives in apply_step(f, st, l).
// q must be valid in f and either disjoint from st.pos or inside the redex;
// a q strictly above the redex is rejected. Disjoint occurrences stay put,
// AndDup forks an inside occurrence into both copies, the erased side of an
// AndE and the whole TopI redex leave nothing, and an Axiom step maps an
// occurrence inside the matched variable's value to that variable's
// occurrences on the right (occurrences at pattern structure leave nothing).
std::set<Position> step_residuals(Formula f, const DeepStep& st,
                                  const Position& q, const LogicSpec& l);

// Removes every TopI step while keeping endpoints. Requires a valid
// derivation, T-free endpoints, and a word-style logic. Each pass takes the
// first TopI step C(A1) -> C(T), replaces every residual of that T downstream
// by A1, rebuilds the affected Axiom instantiations by re-matching, and
// splices the step out.
DeepDerivation eliminate_top(const DeepDerivation& d, const LogicSpec& l);

// Removes every AndDup/AndE step while keeping endpoints, leaving Axiom
// steps only. Requires a valid TopI-free derivation between word formulas
// (<a1>...<an>v) over a word-style logic. Each pass picks the last AndDup
// whose redex has no conjunction above it, follows that conjunction to the
// AndE that erases one side, replays the surviving side's inner steps
// directly on the undoubled formula, then replays the outer word steps.
// The derivation gets strictly shorter each pass.
DeepDerivation eliminate_conjunction(const DeepDerivation& d, const LogicSpec& l);

// Text format; `logic_ref` is stored verbatim in the header line:
//   logic: <name-or-file>
//   formula: <text>
//   step: <rule> @ <position>              (rule: andDup|andE1|andE2|topI)
//   step: axiom @ <position> [schema=<id> sub=<v>=<formula>,<m>=<symbol>,...]
//   formula: <text>
// print/parse round-trip exactly.
std::string print_deep_derivation(const DeepDerivation& d,
                                  const std::string& logic_ref);
std::pair<DeepDerivation, std::string> parse_deep_derivation(const std::string& text);

} // namespace spl
