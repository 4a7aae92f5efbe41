#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spl/deep.hpp"
#include "spl/logic.hpp"
#include "spl/proof.hpp"

namespace spl {

// A word over the alphabet; empty words are allowed.
using Word = std::vector<Symbol>;

// Text form: symbols separated by spaces, "_" for the empty word.
std::string print_word(const Word& w);
Word parse_word(std::string_view text);

struct RewriteRule {
    std::string id;
    Word lhs;
    Word rhs;

    bool operator==(const RewriteRule&) const = default;
};

// A semi-Thue system. Rule ids are unique and follow the same charset as
// axiom schema ids; rule symbols must lie in the alphabet.
class RewriteSystem {
public:
    RewriteSystem(std::set<Symbol> alphabet, std::vector<RewriteRule> rules);

    const std::set<Symbol>& alphabet() const { return alphabet_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const RewriteRule* find(const std::string& id) const;

private:
    std::set<Symbol> alphabet_;
    std::vector<RewriteRule> rules_;
};

struct RewriteStep {
    std::string rule_id;
    int offset = 0;

    bool operator==(const RewriteStep&) const = default;
};

// Nonempty word chain; step i turns words[i] = X lhs Y into X rhs Y with
// |X| = offset.
struct RewriteDerivation {
    std::vector<Word> words;
    std::vector<RewriteStep> steps;

    const Word& first() const { return words.front(); }
    const Word& last() const { return words.back(); }
    std::size_t length() const { return steps.size(); }

    bool operator==(const RewriteDerivation&) const = default;
};

// X lhs Y -> X rhs Y at |X| = offset. An empty lhs inserts rhs at the
// offset. Throws Error when lhs does not occur there.
Word apply_rule(const Word& w, const RewriteRule& r, int offset);

Verdict check_rewrite_derivation(const RewriteDerivation& d,
                                 const RewriteSystem& r);

struct ReachResult {
    bool found = false;
    std::optional<RewriteDerivation> derivation;
};

// Breadth-first search over words of length <= max_len, spending at most
// max_steps expansions. Exploration order is fixed (rules as declared,
// offsets ascending; first discovery wins), so the returned derivation is
// the canonical shortest one. Sound, not complete.
ReachResult reachable(const RewriteSystem& r, const Word& from, const Word& to,
                      int max_len, int max_steps);

// The logic with one word-style schema <a1>...<am>p |- <b1>...<bk>p per
// rule, schema ids = rule ids. Derivability of word formulas in it is
// exactly R-reachability, which makes everything below a translation.
LogicSpec logic_of(const RewriteSystem& r);

// <a1>...<an>p over the fixed variable p.
Formula word_formula(const Word& w);
// The word back out of <a1>...<an>v (any single variable v); nullopt for
// formulas of any other shape.
std::optional<Word> word_of(Formula f);

// Step i becomes an Axiom step at the prefix position, substituting the
// suffix for the schema variable. Output is valid in logic_of(r) and runs
// from word_formula(first) to word_formula(last). Throws on invalid input.
DeepDerivation rewrite_to_deep(const RewriteDerivation& d,
                               const RewriteSystem& r);

// Inverse direction: removes T and conjunction steps (eliminate_top,
// eliminate_conjunction), then reads each surviving Axiom step as a rule
// application at offset = prefix length. Requires d valid in logic_of(r)
// with word-formula endpoints. Throws on invalid input.
RewriteDerivation deep_to_rewrite(const DeepDerivation& d,
                                  const RewriteSystem& r);

// System file: one rule per line, `a b -> b a`, `_` for an empty side,
// `#` comments. Parsing assigns ids r1, r2, ... in declaration order and
// takes the alphabet to be the symbols that occur; printing emits only the
// rules, so systems round-trip exactly when built that way.
std::string print_rewrite_system(const RewriteSystem& r);
RewriteSystem parse_rewrite_system(const std::string& text);

// Derivation file: first line the start word, then one `rule_id @ offset`
// line per step. Parsing replays the steps against the system to recover
// the intermediate words and throws if one does not apply.
std::string print_rewrite_derivation(const RewriteDerivation& d);
RewriteDerivation parse_rewrite_derivation(const std::string& text,
                                           const RewriteSystem& r);

} // namespace spl
