#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spl/context.hpp"
#include "spl/formula.hpp"
#include "spl/logic.hpp"
#include "spl/substitution.hpp"

namespace spl {

// Shared result type for the proof/derivation checkers: ok, or a message
// describing the first failure. `path` locates a proof node (child indices
// from the root), `index` a derivation step; unused fields stay empty/-1.
struct Verdict {
    bool ok = true;
    std::string message;
    std::vector<std::size_t> path;
    long index = -1;

    explicit operator bool() const { return ok; }

    static Verdict pass() { return {}; }
    static Verdict fail(std::string msg, std::vector<std::size_t> path = {},
                        long index = -1) {
        return Verdict{false, std::move(msg), std::move(path), index};
    }
};

// A proof tree for sequents A |- B.
//
// Zero-premise rules: Id (A |- A), TopIntro (A |- T), AndE1 (A&B |- A),
// AndE2 (A&B |- B), Axiom (an instance of a schema of the logic).
// One premise: Mono (A |- B gives <a>A |- <a>B).
// Two premises: Syllogism (A |- B, B |- C give A |- C) and
// AndI (A |- B, A |- C give A |- B&C).
//
// Nodes store their conclusion explicitly so ill-formed proofs are
// representable and the checker has something to reject.
class SequentProof {
public:
    enum class Rule : std::uint8_t {
        Id, TopIntro, Syllogism, AndE1, AndE2, AndI, Mono, Axiom
    };

    // Well-formed constructors; conclusions are computed.
    static SequentProof id(Formula a);                       // a |- a
    static SequentProof top_intro(Formula a);                // a |- T
    static SequentProof and_e1(Formula a, Formula b);        // a&b |- a
    static SequentProof and_e2(Formula a, Formula b);        // a&b |- b
    static SequentProof syllogism(SequentProof ab, SequentProof bc);
    static SequentProof and_i(SequentProof ab, SequentProof ac);
    static SequentProof mono(const Symbol& a, SequentProof p);
    static SequentProof axiom(const LogicSpec& l, const std::string& schema_id,
                              const Substitution& sub);

    // Raw constructor: stores whatever it is given (for parsing and for
    // negative tests). check_sequent_proof decides validity.
    static SequentProof make(Rule r, Sequent conclusion,
                             std::vector<SequentProof> premises,
                             std::optional<Symbol> label = std::nullopt,
                             std::string schema_id = "",
                             Substitution sub = {});

    Rule rule() const;
    const Sequent& conclusion() const;
    const std::vector<SequentProof>& premises() const;
    const Symbol& label() const;          // pre: Mono
    const std::string& schema_id() const; // pre: Axiom
    const Substitution& substitution() const; // pre: Axiom

    int node_count() const;
    int depth() const;

    bool operator==(const SequentProof& o) const;

private:
    struct PNode;
    explicit SequentProof(std::shared_ptr<const PNode> n) : n_(std::move(n)) {}
    std::shared_ptr<const PNode> n_;
};

const char* rule_name(SequentProof::Rule r);

// Validates every node against the rules of K+ extended by l's schemata.
// On failure reports the path to the first offending node (preorder).
Verdict check_sequent_proof(const SequentProof& p, const LogicSpec& l);

// Given a proof of A |- B and a context C, builds a proof of C(A) |- C(B).
// Output size is linear: node_count(out) <= node_count(in) + 4*depth(C) + 1.
// Throws Error if p does not check.
SequentProof positive_replacement(const SequentProof& p, const Context& c,
                                  const LogicSpec& l);

// Applies a substitution to every sequent of the proof; Axiom nodes compose
// their recorded substitution, Mono labels are renamed through the modality
// map. Validity is preserved. Throws Error if p does not check.
SequentProof substitute_proof(const SequentProof& p, const Substitution& s,
                              const LogicSpec& l);

// Text format, one node per line, premises indented below their parent:
//   rule(conclusion)[premise-count]
// where rule is id | top | andE1 | andE2 | syll | andI | mono:<a> |
// axiom:<id>{<bindings>}, bindings being ';'-separated `v := formula` or
// `<m> := symbol` entries. print/parse round-trip exactly.
std::string print_proof(const SequentProof& p);
SequentProof parse_proof(const std::string& text);

} // namespace spl
