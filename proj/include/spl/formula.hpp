#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spl/symbol.hpp"

namespace spl {

// Strictly positive formula:
//
//   A ::= p | T | A & B | <a>A
//
// Values are immutable, hash-consed nodes in a process-wide arena, so
// equality and hashing are O(1) and structural sharing is free. Formula is
// a cheap copyable handle; the arena is never freed. Safe to share across
// threads.
class Formula {
public:
    enum class Kind : std::uint8_t { Var, Top, And, Dia };

    // Constructors. var() validates the name ([a-z][a-zA-Z0-9_]*, not "T").
    static Formula var(std::string_view name);
    static Formula top();
    static Formula conj(Formula left, Formula right);
    static Formula dia(const Symbol& label, Formula body);

    Kind kind() const;
    bool is_var() const { return kind() == Kind::Var; }
    bool is_top() const { return kind() == Kind::Top; }
    bool is_and() const { return kind() == Kind::And; }
    bool is_dia() const { return kind() == Kind::Dia; }

    const std::string& var_name() const; // pre: Var
    Formula left() const;                // pre: And
    Formula right() const;               // pre: And
    Symbol label() const;                // pre: Dia
    Formula body() const;                // pre: Dia

    // Node count: Var/Top = 1, And/Dia = 1 + children. Cached.
    int size() const;
    bool contains_top() const;

    void collect_vars(std::set<std::string>& out) const;
    void collect_symbols(std::set<Symbol>& out) const;
    std::set<std::string> vars() const;
    std::set<Symbol> symbols() const;

    bool operator==(const Formula& o) const { return n_ == o.n_; }
    bool operator!=(const Formula& o) const { return n_ != o.n_; }

    std::size_t hash() const;

    // Stable total order (by structure); handy for deterministic output.
    bool operator<(const Formula& o) const;

    std::string str() const;

    struct Node; // opaque
    const Node* raw() const { return n_; }

private:
    explicit Formula(const Node* n) : n_(n) {}
    const Node* n_;
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

// A ⊢ B, written "A |- B".
struct Sequent {
    Formula lhs;
    Formula rhs;

    bool operator==(const Sequent& o) const = default;
    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Sequent& s);

// Parsing. Grammar (ASCII):
//   formula  := conj
//   conj     := unary ('&' unary)*          left-associative
//   unary    := '<' name '>' unary | atom
//   atom     := 'T' | var | '(' formula ')'
//   sequent  := formula '|-' formula
// '&' has the lowest precedence; diamonds bind tighter. Throws ParseError
// with the offending offset.
Formula parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);

// Printing with minimal parentheses; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);
std::string print_sequent(const Sequent& s);

} // namespace spl

template <>
struct std::hash<spl::Formula> {
    std::size_t operator()(const spl::Formula& f) const { return f.hash(); }
};
