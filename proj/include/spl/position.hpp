#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spl/formula.hpp"

namespace spl {

// One step down into a formula tree: left/right child of a conjunction,
// or the body of a diamond.
enum class Dir : std::uint8_t { Left, Right, Body };

// Path from the root; the empty path addresses the root itself.
using Position = std::vector<Dir>;

// Text form used in derivation files: "-" for the empty path, otherwise
// dot-separated "left"/"right"/"body" components, e.g. "body.left".
std::string print_position(const Position& p);
Position parse_position(std::string_view text);

std::optional<Formula> try_subformula_at(Formula f, const Position& p);
Formula subformula_at(Formula f, const Position& p);            // throws Error
Formula replace_at(Formula f, const Position& p, Formula g);    // throws Error

// All positions of f in preorder (root first, left before right).
std::vector<Position> all_positions(Formula f);

bool is_prefix(const Position& p, const Position& q);      // p prefix of q
bool disjoint(const Position& p, const Position& q);       // neither a prefix

Position concat(Position p, const Position& q);

} // namespace spl
