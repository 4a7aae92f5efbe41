#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spl/formula.hpp"
#include "spl/position.hpp"

namespace spl {

// A formula with exactly one hole. Represented as the spine from the root
// to the hole, so the one-hole invariant holds by construction: every node
// of the spine is either the hole itself, a conjunction with the hole on a
// known side, or a diamond over the rest of the spine.
class Context {
public:
    enum class Kind : std::uint8_t { Hole, AndL, AndR, Dia };

    static Context hole();
    static Context and_l(Context c, Formula right); // c & right
    static Context and_r(Formula left, Context c);  // left & c
    static Context dia(const Symbol& label, Context c);

    // <a1>...<an>[] for a word of modalities.
    static Context dia_word(std::span<const Symbol> word);

    // Factor f at position p: plug(Context::at(f, p), subformula_at(f, p)) == f.
    static Context at(Formula f, const Position& p);

    Kind kind() const;
    bool is_hole() const { return kind() == Kind::Hole; }

    Formula side() const;    // pre: AndL/AndR, the formula next to the spine
    Symbol label() const;    // pre: Dia
    Context inner() const;   // pre: not Hole

    Formula plug(Formula f) const;

    // Number of holes; 1 for every representable context, kept as a checked
    // property rather than an assumption.
    int hole_count() const;

    Position hole_position() const;
    int depth() const; // spine length

    std::string str() const; // hole printed as "[]"

    bool operator==(const Context& o) const;

private:
    struct CNode;
    explicit Context(std::shared_ptr<const CNode> n) : n_(std::move(n)) {}
    std::shared_ptr<const CNode> n_;

    friend Context compose_contexts(const Context&, const Context&);
};

// plug(c, f): replace the hole of c with f.
Formula plug(const Context& c, Formula f);

// compose_contexts(outer, inner): replace outer's hole with inner;
// plug(compose_contexts(o, i), f) == plug(o, plug(i, f)).
Context compose_contexts(const Context& outer, const Context& inner);

} // namespace spl
