#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spl/formula.hpp"
#include "spl/substitution.hpp"

namespace spl {

// One axiom schema lhs |- rhs. Every variable occurring in the schema is
// schematic; diamond labels listed in the owning LogicSpec's modality
// metavariable set are schematic too, all other labels are concrete.
// Ids are restricted to [A-Za-z0-9_.+-] so they embed cleanly in the
// proof and derivation text formats.
struct AxiomSchema {
    std::string id;
    Formula lhs;
    Formula rhs;
};

// An extension of K+ by axiom schemata. K+ itself has an empty schema list.
class LogicSpec {
public:
    LogicSpec(std::string name, std::vector<AxiomSchema> schemata,
              std::set<std::string> mod_metavars);

    const std::string& name() const { return name_; }
    const std::vector<AxiomSchema>& schemata() const { return schemata_; }
    const std::set<std::string>& mod_metavars() const { return mod_metavars_; }

    const AxiomSchema* find(const std::string& id) const;

    // Schema labels that are actual symbols (not metavariables).
    std::set<Symbol> concrete_symbols() const;

    // True if every schema is of the form <a1>...<am>v |- <b1>...<bk>v with
    // one shared variable v on both sides. The diamond labels may still be
    // metavariables. The derivation-normalization procedures require this.
    bool is_word_style() const;

    static LogicSpec kp();
    static LogicSpec k4p();
    static LogicSpec s4p();
    static LogicSpec s5p();

    // {kp, k4p, s4p, s5p} -> the builtin; anything else -> nullopt.
    static std::optional<LogicSpec> builtin(const std::string& key);

private:
    std::string name_;
    std::vector<AxiomSchema> schemata_;
    std::set<std::string> mod_metavars_;
};

// K+, K4+, S4+, S5+ in that order.
std::vector<LogicSpec> builtin_logics();

// Text format:
//   # comment
//   logic: <name>
//   meta: a b            (optional; modality metavariable names)
//   axiom <id>: <formula> |- <formula>
LogicSpec parse_logic(const std::string& text);
std::string print_logic(const LogicSpec& l);

// Accepts a builtin key (kp/k4p/s4p/s5p) or a path to a file, resolved
// relative to base_dir when not absolute. The file may be a logic file or
// a rewrite-system file; the latter stands for its induced logic.
LogicSpec resolve_logic(const std::string& ref, const std::string& base_dir);

} // namespace spl
