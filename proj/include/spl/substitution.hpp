#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "spl/formula.hpp"

namespace spl {

// Simultaneous substitution: variables to formulas, plus an optional map
// from modality metavariables to symbols. Replacements are inserted
// verbatim (never re-substituted). Unmapped names stay unchanged.
class Substitution {
public:
    Substitution() = default;

    Substitution& set_var(const std::string& name, Formula f);
    Substitution& set_mod(const std::string& name, Symbol s);

    std::optional<Formula> var(const std::string& name) const;
    std::optional<Symbol> mod(const std::string& name) const;

    const std::map<std::string, Formula>& var_map() const { return vars_; }
    const std::map<std::string, Symbol>& mod_map() const { return mods_; }

    bool empty() const { return vars_.empty() && mods_.empty(); }

    Formula apply(Formula f) const;
    Sequent apply(const Sequent& s) const;

    // Composition: compose(s2).apply(x) == s2.apply(this->apply(x)).
    Substitution compose(const Substitution& s2) const;

    bool operator==(const Substitution&) const = default;

private:
    std::map<std::string, Formula> vars_;
    std::map<std::string, Symbol> mods_;
};

Formula substitute(Formula f, const Substitution& s);

// Text form of a binding list: variable entries `p<assign>formula`, modality
// entries `<a><assign>symbol`, joined by `sep`. Variables first, each group
// sorted by name. Formula text never contains ';', ',' or '=', so splitting
// on the separator is unambiguous.
std::string print_substitution(const Substitution& s, const std::string& assign,
                               const std::string& sep);
Substitution parse_substitution(std::string_view text, const std::string& assign,
                                char sep);

// One-way matching of a schema pattern against a concrete subject. Every
// variable of the pattern is schematic; a diamond label is schematic iff
// its name is in mod_metavars. On success extends `out` (consistently with
// the bindings already present) and returns true.
bool match(Formula pattern, Formula subject,
           const std::set<std::string>& mod_metavars, Substitution& out);

} // namespace spl
