#include "spl/semantics.hpp"

#include <sstream>

#include "spl/error.hpp"

namespace spl {

void KripkeModel::validate() const {
    for (const auto& [sym, edges] : relations)
        for (const auto& [a, b] : edges)
            if (!worlds.count(a) || !worlds.count(b))
                throw Error("relation '" + sym.name() +
                            "' mentions an unknown world");
    for (const auto& [var, set] : valuation)
        for (WorldId w : set)
            if (!worlds.count(w))
                throw Error("valuation of '" + var +
                            "' mentions an unknown world");
}

bool KripkeModel::has_edge(const Symbol& s, WorldId from, WorldId to) const {
    auto it = relations.find(s);
    return it != relations.end() && it->second.count({from, to});
}

bool KripkeModel::holds_var(const std::string& v, WorldId w) const {
    auto it = valuation.find(v);
    return it != valuation.end() && it->second.count(w);
}

bool eval(const KripkeModel& m, WorldId w, Formula f) {
    if (!m.worlds.count(w))
        throw Error("eval: unknown world " + std::to_string(w));
    switch (f.kind()) {
    case Formula::Kind::Var: return m.holds_var(f.var_name(), w);
    case Formula::Kind::Top: return true;
    case Formula::Kind::And:
        return eval(m, w, f.left()) && eval(m, w, f.right());
    case Formula::Kind::Dia: {
        auto it = m.relations.find(f.label());
        if (it == m.relations.end()) return false;
        for (const auto& [a, b] : it->second)
            if (a == w && eval(m, b, f.body())) return true;
        return false;
    }
    }
    return false;
}

std::set<WorldId> truth_set(const KripkeModel& m, Formula f) {
    std::set<WorldId> out;
    for (WorldId w : m.worlds)
        if (eval(m, w, f)) out.insert(w);
    return out;
}

KripkeModel fixture_model() {
    KripkeModel m;
    m.worlds = {0, 1};
    m.relations[Symbol{"a"}] = {{0, 1}};
    m.valuation["p"] = {0};
    return m;
}

namespace {

// Builds the subtree for formula f rooted at world `w`, assigning child ids
// in preorder.
void build_tree(Formula f, WorldId w, KripkeModel& m, WorldId& next) {
    switch (f.kind()) {
    case Formula::Kind::Var:
        m.valuation[f.var_name()].insert(w);
        break;
    case Formula::Kind::Top:
        break;
    case Formula::Kind::And:
        build_tree(f.left(), w, m, next);
        build_tree(f.right(), w, m, next);
        break;
    case Formula::Kind::Dia: {
        WorldId child = next++;
        m.worlds.insert(child);
        m.relations[f.label()].insert({w, child});
        build_tree(f.body(), child, m, next);
        break;
    }
    }
}

} // namespace

TreeModel tree_model(Formula f) {
    TreeModel t;
    t.root = 0;
    t.model.worlds.insert(0);
    WorldId next = 1;
    build_tree(f, 0, t.model, next);
    return t;
}

const char* logic_key(LogicName l) {
    switch (l) {
    case LogicName::Kp: return "kp";
    case LogicName::K4p: return "k4p";
    case LogicName::S4p: return "s4p";
    }
    return "?";
}

LogicName parse_logic_name(const std::string& key) {
    if (key == "kp") return LogicName::Kp;
    if (key == "k4p") return LogicName::K4p;
    if (key == "s4p") return LogicName::S4p;
    throw Error("unknown logic '" + key + "' (expected kp, k4p or s4p)");
}

namespace {

std::set<std::pair<WorldId, WorldId>> transitive(
    const std::set<std::pair<WorldId, WorldId>>& edges) {
    std::map<WorldId, std::set<WorldId>> succ;
    for (const auto& [a, b] : edges) succ[a].insert(b);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [a, bs] : succ) {
            std::set<WorldId> add;
            for (WorldId b : bs) {
                auto it = succ.find(b);
                if (it == succ.end()) continue;
                for (WorldId c : it->second)
                    if (!bs.count(c)) add.insert(c);
            }
            if (!add.empty()) {
                bs.insert(add.begin(), add.end());
                changed = true;
            }
        }
    }
    std::set<std::pair<WorldId, WorldId>> out;
    for (const auto& [a, bs] : succ)
        for (WorldId b : bs) out.insert({a, b});
    return out;
}

} // namespace

KripkeModel closure(const TreeModel& t, LogicName l) {
    KripkeModel m = t.model;
    switch (l) {
    case LogicName::Kp:
        break;
    case LogicName::K4p:
        for (auto& [sym, edges] : m.relations) edges = transitive(edges);
        break;
    case LogicName::S4p:
        for (auto& [sym, edges] : m.relations) {
            edges = transitive(edges);
            for (WorldId w : m.worlds) edges.insert({w, w});
        }
        break;
    }
    return m;
}

bool decide(LogicName l, const Sequent& s) {
    TreeModel t = tree_model(s.lhs);
    // Reflexivity must also cover symbols that occur only on the right.
    for (const Symbol& sym : s.rhs.symbols())
        t.model.relations.try_emplace(sym);
    KripkeModel m = closure(t, l);
    return eval(m, t.root, s.rhs);
}

// ------------------------------------------------------------- text form

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

WorldId parse_world(const std::string& tok) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad world id '" + tok + "'");
    return std::stoi(tok);
}

} // namespace

KripkeModel parse_model(const std::string& text) {
    KripkeModel m;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::string s = strip(line);
        if (s.empty()) continue;
        auto bad = [&](const std::string& why) {
            return ParseError("model file line " + std::to_string(lineno) +
                              ": " + why);
        };
        if (s.rfind("worlds:", 0) == 0) {
            std::istringstream ws(s.substr(7));
            std::string tok;
            while (ws >> tok) m.worlds.insert(parse_world(tok));
        } else if (s.rfind("rel ", 0) == 0) {
            std::size_t colon = s.find(':');
            if (colon == std::string::npos) throw bad("expected 'rel <sym>: ...'");
            Symbol sym{strip(s.substr(4, colon - 4))};
            auto& edges = m.relations[sym];
            std::istringstream es(s.substr(colon + 1));
            std::string tok;
            while (es >> tok) {
                std::size_t arrow = tok.find("->");
                if (arrow == std::string::npos)
                    throw bad("expected 'from->to', got '" + tok + "'");
                edges.insert({parse_world(tok.substr(0, arrow)),
                              parse_world(tok.substr(arrow + 2))});
            }
        } else if (s.rfind("val ", 0) == 0) {
            std::size_t colon = s.find(':');
            if (colon == std::string::npos) throw bad("expected 'val <var>: ...'");
            std::string var = strip(s.substr(4, colon - 4));
            if (!Symbol::valid_name(var)) throw bad("bad variable '" + var + "'");
            auto& set = m.valuation[var];
            std::istringstream vs(s.substr(colon + 1));
            std::string tok;
            while (vs >> tok) set.insert(parse_world(tok));
        } else {
            throw bad("unrecognized line '" + s + "'");
        }
    }
    m.validate();
    return m;
}

std::string print_model(const KripkeModel& m) {
    std::ostringstream out;
    out << "worlds:";
    for (WorldId w : m.worlds) out << ' ' << w;
    out << '\n';
    for (const auto& [sym, edges] : m.relations) {
        out << "rel " << sym.name() << ':';
        for (const auto& [a, b] : edges) out << ' ' << a << "->" << b;
        out << '\n';
    }
    for (const auto& [var, set] : m.valuation) {
        out << "val " << var << ':';
        for (WorldId w : set) out << ' ' << w;
        out << '\n';
    }
    return out.str();
}

} // namespace spl
