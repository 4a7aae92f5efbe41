#include "spl/logic.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spl/error.hpp"
#include "spl/rewrite.hpp"

namespace spl {

LogicSpec::LogicSpec(std::string name, std::vector<AxiomSchema> schemata,
                     std::set<std::string> mod_metavars)
    : name_(std::move(name)),
      schemata_(std::move(schemata)),
      mod_metavars_(std::move(mod_metavars)) {
    std::set<std::string> ids;
    for (const auto& sch : schemata_) {
        if (sch.id.empty())
            throw Error("logic '" + name_ + "': schema with empty id");
        // Ids are embedded in proof and derivation text, so keep them to
        // characters none of those formats use as delimiters.
        if (sch.id.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                                     "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                     "0123456789_.+-") != std::string::npos)
            throw Error("logic '" + name_ + "': schema id '" + sch.id +
                        "' has characters outside [A-Za-z0-9_.+-]");
        if (!ids.insert(sch.id).second)
            throw Error("logic '" + name_ + "': duplicate schema id '" +
                        sch.id + "'");
        std::set<std::string> lv = sch.lhs.vars();
        for (const std::string& v : sch.rhs.vars())
            if (!lv.count(v))
                throw Error("logic '" + name_ + "': schema '" + sch.id +
                            "' uses variable '" + v +
                            "' on the right only");
    }
}

const AxiomSchema* LogicSpec::find(const std::string& id) const {
    for (const auto& sch : schemata_)
        if (sch.id == id) return &sch;
    return nullptr;
}

std::set<Symbol> LogicSpec::concrete_symbols() const {
    std::set<Symbol> out;
    for (const auto& sch : schemata_) {
        for (const Symbol& s : sch.lhs.symbols())
            if (!mod_metavars_.count(s.name())) out.insert(s);
        for (const Symbol& s : sch.rhs.symbols())
            if (!mod_metavars_.count(s.name())) out.insert(s);
    }
    return out;
}

namespace {

// f == <c1>...<cm>v for the given v? (m may be 0)
bool is_word_over(Formula f, const std::string& v) {
    while (f.is_dia()) f = f.body();
    return f.is_var() && f.var_name() == v;
}

} // namespace

bool LogicSpec::is_word_style() const {
    for (const auto& sch : schemata_) {
        Formula f = sch.lhs;
        while (f.is_dia()) f = f.body();
        if (!f.is_var()) return false;
        const std::string& v = f.var_name();
        if (!is_word_over(sch.lhs, v) || !is_word_over(sch.rhs, v))
            return false;
    }
    return true;
}

LogicSpec LogicSpec::kp() { return LogicSpec("K+", {}, {}); }

LogicSpec LogicSpec::k4p() {
    Symbol a{"a"};
    Formula p = Formula::var("p");
    return LogicSpec(
        "K4+",
        {AxiomSchema{"4", Formula::dia(a, Formula::dia(a, p)), Formula::dia(a, p)}},
        {"a"});
}

LogicSpec LogicSpec::s4p() {
    Symbol a{"a"};
    Formula p = Formula::var("p");
    return LogicSpec(
        "S4+",
        {AxiomSchema{"4", Formula::dia(a, Formula::dia(a, p)), Formula::dia(a, p)},
         AxiomSchema{"T", p, Formula::dia(a, p)}},
        {"a"});
}

LogicSpec LogicSpec::s5p() {
    Symbol a{"a"};
    Formula p = Formula::var("p");
    Formula q = Formula::var("q");
    return LogicSpec(
        "S5+",
        {AxiomSchema{"4", Formula::dia(a, Formula::dia(a, p)), Formula::dia(a, p)},
         AxiomSchema{"T", p, Formula::dia(a, p)},
         AxiomSchema{"5",
                     Formula::conj(Formula::dia(a, p), Formula::dia(a, q)),
                     Formula::dia(a, Formula::conj(p, Formula::dia(a, q)))}},
        {"a"});
}

std::optional<LogicSpec> LogicSpec::builtin(const std::string& key) {
    if (key == "kp") return kp();
    if (key == "k4p") return k4p();
    if (key == "s4p") return s4p();
    if (key == "s5p") return s5p();
    return std::nullopt;
}

std::vector<LogicSpec> builtin_logics() {
    return {LogicSpec::kp(), LogicSpec::k4p(), LogicSpec::s4p(),
            LogicSpec::s5p()};
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string drop_comment(const std::string& line) {
    std::size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

} // namespace

LogicSpec parse_logic(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string name;
    std::set<std::string> metas;
    std::vector<AxiomSchema> schemata;
    bool saw_logic = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(drop_comment(line));
        if (s.empty()) continue;
        if (s.rfind("logic:", 0) == 0) {
            name = strip(s.substr(6));
            saw_logic = true;
        } else if (s.rfind("meta:", 0) == 0) {
            std::istringstream ms(s.substr(5));
            std::string tok;
            while (ms >> tok) metas.insert(tok);
        } else if (s.rfind("axiom", 0) == 0) {
            std::size_t colon = s.find(':');
            if (colon == std::string::npos)
                throw ParseError("logic file line " + std::to_string(lineno) +
                            ": expected 'axiom <id>: <lhs> |- <rhs>'");
            std::string id = strip(s.substr(5, colon - 5));
            if (id.empty())
                throw ParseError("logic file line " + std::to_string(lineno) +
                            ": axiom needs an id");
            Sequent sq = parse_sequent(s.substr(colon + 1));
            schemata.push_back(AxiomSchema{id, sq.lhs, sq.rhs});
        } else {
            throw ParseError("logic file line " + std::to_string(lineno) +
                        ": unrecognized line '" + s + "'");
        }
    }
    if (!saw_logic || name.empty())
        throw ParseError("logic file: missing 'logic: <name>' header");
    return LogicSpec(name, std::move(schemata), std::move(metas));
}

std::string print_logic(const LogicSpec& l) {
    std::ostringstream out;
    out << "logic: " << l.name() << "\n";
    if (!l.mod_metavars().empty()) {
        out << "meta:";
        for (const std::string& m : l.mod_metavars()) out << ' ' << m;
        out << "\n";
    }
    for (const auto& sch : l.schemata())
        out << "axiom " << sch.id << ": " << sch.lhs << " |- " << sch.rhs
            << "\n";
    return out.str();
}

LogicSpec resolve_logic(const std::string& ref, const std::string& base_dir) {
    if (auto b = LogicSpec::builtin(ref)) return *b;
    std::filesystem::path p(ref);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    std::ifstream in(p);
    if (!in)
        throw Error("cannot open logic '" + ref +
                    "' (not a builtin kp/k4p/s4p/s5p and no such file)");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    // Rewrite-system files are accepted too and stand for their induced
    // logic, so derivations can name the system they came from.
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
        std::string s = strip(drop_comment(line));
        if (s.empty()) continue;
        if (s.rfind("logic:", 0) == 0) break;
        if (s.find("->") != std::string::npos)
            return logic_of(parse_rewrite_system(text));
        break;
    }
    return parse_logic(text);
}

} // namespace spl
