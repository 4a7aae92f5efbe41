#include "spl/substitution.hpp"

#include <sstream>

#include "spl/error.hpp"

namespace spl {

Substitution& Substitution::set_var(const std::string& name, Formula f) {
    vars_.insert_or_assign(name, f);
    return *this;
}

Substitution& Substitution::set_mod(const std::string& name, Symbol s) {
    mods_.insert_or_assign(name, std::move(s));
    return *this;
}

std::optional<Formula> Substitution::var(const std::string& name) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) return std::nullopt;
    return it->second;
}

std::optional<Symbol> Substitution::mod(const std::string& name) const {
    auto it = mods_.find(name);
    if (it == mods_.end()) return std::nullopt;
    return it->second;
}

Formula Substitution::apply(Formula f) const {
    switch (f.kind()) {
    case Formula::Kind::Var:
        if (auto r = var(f.var_name())) return *r;
        return f;
    case Formula::Kind::Top: return f;
    case Formula::Kind::And:
        return Formula::conj(apply(f.left()), apply(f.right()));
    case Formula::Kind::Dia: {
        Symbol l = f.label();
        if (auto r = mod(l.name())) l = *r;
        return Formula::dia(l, apply(f.body()));
    }
    }
    return f;
}

Sequent Substitution::apply(const Sequent& s) const {
    return Sequent{apply(s.lhs), apply(s.rhs)};
}

Substitution Substitution::compose(const Substitution& s2) const {
    Substitution out;
    for (const auto& [name, f] : vars_)
        out.set_var(name, s2.apply(f));
    for (const auto& [name, f] : s2.vars_)
        if (!vars_.count(name)) out.set_var(name, f);
    for (const auto& [name, s] : mods_) {
        auto renamed = s2.mod(s.name());
        out.set_mod(name, renamed ? *renamed : s);
    }
    for (const auto& [name, s] : s2.mods_)
        if (!mods_.count(name)) out.set_mod(name, s);
    return out;
}

Formula substitute(Formula f, const Substitution& s) { return s.apply(f); }

std::string print_substitution(const Substitution& s, const std::string& assign,
                               const std::string& sep) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, f] : s.var_map()) {
        if (!first) out << sep;
        first = false;
        out << name << assign << f;
    }
    for (const auto& [name, sym] : s.mod_map()) {
        if (!first) out << sep;
        first = false;
        out << '<' << name << '>' << assign << sym.name();
    }
    return out.str();
}

namespace {

std::string trimmed(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

Substitution parse_substitution(std::string_view text, const std::string& assign,
                                char sep) {
    Substitution out;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t end = text.find(sep, i);
        std::string_view entry = text.substr(
            i, end == std::string_view::npos ? std::string_view::npos : end - i);
        std::string e = trimmed(entry);
        if (!e.empty()) {
            std::size_t at = e.find(assign);
            if (at == std::string::npos)
                throw ParseError("bad substitution entry '" + e + "'");
            std::string nameside = trimmed(e.substr(0, at));
            std::string value = trimmed(e.substr(at + assign.size()));
            if (!nameside.empty() && nameside.front() == '<') {
                if (nameside.back() != '>')
                    throw ParseError("bad modality binding '" + e + "'");
                std::string name = nameside.substr(1, nameside.size() - 2);
                out.set_mod(name, Symbol(value));
            } else {
                out.set_var(nameside, parse_formula(value));
            }
        }
        if (end == std::string_view::npos) break;
        i = end + 1;
    }
    return out;
}

bool match(Formula pattern, Formula subject,
           const std::set<std::string>& mod_metavars, Substitution& out) {
    switch (pattern.kind()) {
    case Formula::Kind::Var: {
        const std::string& v = pattern.var_name();
        if (auto bound = out.var(v)) return *bound == subject;
        out.set_var(v, subject);
        return true;
    }
    case Formula::Kind::Top: return subject.is_top();
    case Formula::Kind::And:
        return subject.is_and() &&
               match(pattern.left(), subject.left(), mod_metavars, out) &&
               match(pattern.right(), subject.right(), mod_metavars, out);
    case Formula::Kind::Dia: {
        if (!subject.is_dia()) return false;
        Symbol pl = pattern.label();
        Symbol sl = subject.label();
        if (mod_metavars.count(pl.name())) {
            if (auto bound = out.mod(pl.name())) {
                if (*bound != sl) return false;
            } else {
                out.set_mod(pl.name(), sl);
            }
        } else if (pl != sl) {
            return false;
        }
        return match(pattern.body(), subject.body(), mod_metavars, out);
    }
    }
    return false;
}

} // namespace spl
