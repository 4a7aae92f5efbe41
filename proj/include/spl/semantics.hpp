#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "spl/formula.hpp"

namespace spl {

using WorldId = int;

// Finite Kripke model with one relation per symbol and a valuation per
// variable. Missing map entries mean "empty".
struct KripkeModel {
    std::set<WorldId> worlds;
    std::map<Symbol, std::set<std::pair<WorldId, WorldId>>> relations;
    std::map<std::string, std::set<WorldId>> valuation;

    // Throws Error if a relation or valuation mentions an unknown world.
    void validate() const;

    bool has_edge(const Symbol& s, WorldId from, WorldId to) const;
    bool holds_var(const std::string& v, WorldId w) const;
};

// A model with a distinguished root, as built from a formula.
struct TreeModel {
    KripkeModel model;
    WorldId root = 0;
};

// w |= f. Throws Error if w is not a world of m.
bool eval(const KripkeModel& m, WorldId w, Formula f);

// { w : w |= f }.
std::set<WorldId> truth_set(const KripkeModel& m, Formula f);

// Two worlds 0 and 1, a single edge 0 -a-> 1, and p true exactly at 0.
KripkeModel fixture_model();

// The canonical tree-shaped model of a formula: the root carries the
// variables among the top-level conjuncts; every top-level conjunct <b>G
// spawns a b-child built from G. T contributes nothing. World ids are
// assigned in preorder, root = 0.
TreeModel tree_model(Formula f);

// The decidable fragment: S5+ has no closure here by design.
enum class LogicName { Kp, K4p, S4p };

const char* logic_key(LogicName l);                    // kp / k4p / s4p
LogicName parse_logic_name(const std::string& key);    // throws Error

// K+: the model itself; K4+: per-symbol transitive closure; S4+: per-symbol
// reflexive-transitive closure (every symbol with a relation entry gains all
// self-loops).
KripkeModel closure(const TreeModel& m, LogicName l);

// Entailment check: build tree_model(lhs), take the closure appropriate for
// the logic (registering the rhs's symbols first, so S4+ reflexivity applies
// to them too), and evaluate rhs at the root. Polynomial time.
bool decide(LogicName l, const Sequent& s);

// Model text format (line-oriented, '#' comments):
//   worlds: 0 1
//   rel a: 0->1 1->1
//   val p: 0
KripkeModel parse_model(const std::string& text);
std::string print_model(const KripkeModel& m);

} // namespace spl
