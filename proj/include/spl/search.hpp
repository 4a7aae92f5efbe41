#pragma once

#include <optional>
#include <set>
#include <unordered_map>

#include "spl/deep.hpp"
#include "spl/logic.hpp"

namespace spl {

// Forward closure of one formula under the deep rules of a logic: every
// rule at every position, keeping results of size <= size_bound, out to
// step_bound rewrite steps. Exploration is breadth-first with a fixed
// order (positions preorder; AndDup, AndE1, AndE2, TopI, then the schemata
// as declared, with modality metavariables the left-hand match leaves open
// enumerated over the alphabet), and the first discovery of a formula
// pins its derivation, so results are deterministic.
//
// Building the closure is the whole cost; afterwards any number of
// right-hand sides can be queried against it.
class Saturation {
public:
    // The alphabet for open metavariables is `alphabet` plus the origin's
    // symbols plus the logic's concrete symbols.
    Saturation(LogicSpec l, Formula origin, int size_bound, int step_bound,
               const std::set<Symbol>& alphabet = {});

    Formula origin() const { return origin_; }
    bool reached(Formula f) const { return entries_.count(f) != 0; }
    std::size_t size() const { return entries_.size(); }

    // Derivation origin -> f, or nullopt when f was never reached.
    std::optional<DeepDerivation> derivation_to(Formula f) const;

private:
    struct Entry {
        std::optional<Formula> parent;
        DeepStep step; // parent -> this
        int depth = 0;
    };

    LogicSpec logic_;
    Formula origin_;
    std::vector<Symbol> alphabet_;
    std::unordered_map<Formula, Entry> entries_;
};

struct SearchResult {
    bool found = false;
    std::optional<DeepDerivation> derivation;
};

// Saturates from s.lhs and looks for s.rhs. Sound (a found derivation
// always checks) but bounded, so "not found" proves nothing.
SearchResult bounded_forward_search(const LogicSpec& l, const Sequent& s,
                                    int size_bound, int step_bound);

} // namespace spl
