#include "spl/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "spl/error.hpp"
#include "spl/position.hpp"

namespace spl {

std::string print_word(const Word& w) {
    if (w.empty()) return "_";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += w[i].name();
    }
    return out;
}

Word parse_word(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> toks;
    for (std::string t; in >> t;) toks.push_back(t);
    if (toks.empty()) throw ParseError("empty word text (use `_`)");
    if (toks.size() == 1 && toks[0] == "_") return {};
    Word w;
    for (const std::string& t : toks) {
        if (t == "_")
            throw ParseError("`_` denotes the empty word and cannot mix with "
                        "symbols");
        if (!Symbol::valid_name(t))
            throw ParseError("'" + t + "' is not a symbol name");
        w.emplace_back(t);
    }
    return w;
}

RewriteSystem::RewriteSystem(std::set<Symbol> alphabet,
                             std::vector<RewriteRule> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
    std::set<std::string> ids;
    for (const RewriteRule& r : rules_) {
        if (r.id.empty()) throw Error("rewrite rule with empty id");
        if (r.id.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                                   "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                   "0123456789_.+-") != std::string::npos)
            throw Error("rewrite rule id '" + r.id +
                        "' has characters outside [A-Za-z0-9_.+-]");
        if (!ids.insert(r.id).second)
            throw Error("duplicate rewrite rule id '" + r.id + "'");
        for (const Word* side : {&r.lhs, &r.rhs})
            for (const Symbol& s : *side)
                if (!alphabet_.count(s))
                    throw Error("rule " + r.id + ": symbol '" + s.name() +
                                "' is not in the alphabet");
    }
}

const RewriteRule* RewriteSystem::find(const std::string& id) const {
    for (const RewriteRule& r : rules_)
        if (r.id == id) return &r;
    return nullptr;
}

Word apply_rule(const Word& w, const RewriteRule& r, int offset) {
    bool fits = offset >= 0 &&
                static_cast<std::size_t>(offset) + r.lhs.size() <= w.size();
    if (!fits || !std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + offset))
        throw Error("rule " + r.id + " (" + print_word(r.lhs) + " -> " +
                    print_word(r.rhs) + ") does not match " + print_word(w) +
                    " at offset " + std::to_string(offset));
    Word out(w.begin(), w.begin() + offset);
    out.insert(out.end(), r.rhs.begin(), r.rhs.end());
    out.insert(out.end(), w.begin() + offset + static_cast<long>(r.lhs.size()),
               w.end());
    return out;
}

Verdict check_rewrite_derivation(const RewriteDerivation& d,
                                 const RewriteSystem& r) {
    if (d.words.empty()) return Verdict::fail("derivation has no words");
    if (d.words.size() != d.steps.size() + 1)
        return Verdict::fail("derivation has " + std::to_string(d.words.size()) +
                             " words for " + std::to_string(d.steps.size()) +
                             " steps");
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const RewriteRule* rule = r.find(d.steps[i].rule_id);
        if (!rule)
            return Verdict::fail("unknown rule id '" + d.steps[i].rule_id + "'",
                                 {}, static_cast<long>(i));
        Word got;
        try {
            got = apply_rule(d.words[i], *rule, d.steps[i].offset);
        } catch (const Error& e) {
            return Verdict::fail(e.what(), {}, static_cast<long>(i));
        }
        if (got != d.words[i + 1])
            return Verdict::fail("step yields " + print_word(got) +
                                 " but the derivation records " +
                                 print_word(d.words[i + 1]),
                                 {}, static_cast<long>(i));
    }
    return Verdict::pass();
}

ReachResult reachable(const RewriteSystem& r, const Word& from, const Word& to,
                      int max_len, int max_steps) {
    if (max_len < 0 || max_steps < 0)
        throw Error("reachable bounds must be >= 0");

    struct Entry {
        std::optional<Word> parent;
        RewriteStep step;
        int depth = 0;
    };
    std::map<Word, Entry> seen;
    std::deque<Word> queue;
    seen.emplace(from, Entry{});
    queue.push_back(from);

    int budget = max_steps;
    bool done = from == to;
    while (!queue.empty() && budget > 0 && !done) {
        Word w = queue.front();
        queue.pop_front();
        --budget;
        int depth = seen.at(w).depth;
        for (const RewriteRule& rule : r.rules()) {
            if (rule.lhs.size() > w.size()) continue;
            for (std::size_t off = 0; off + rule.lhs.size() <= w.size();
                 ++off) {
                if (!std::equal(rule.lhs.begin(), rule.lhs.end(),
                                w.begin() + static_cast<long>(off)))
                    continue;
                Word next = apply_rule(w, rule, static_cast<int>(off));
                if (next.size() > static_cast<std::size_t>(max_len)) continue;
                auto [it, fresh] = seen.try_emplace(
                    next,
                    Entry{w, {rule.id, static_cast<int>(off)}, depth + 1});
                (void)it;
                if (!fresh) continue;
                queue.push_back(next);
                if (next == to) done = true;
            }
            if (done) break;
        }
    }

    auto hit = seen.find(to);
    if (hit == seen.end()) return {false, std::nullopt};
    RewriteDerivation d;
    d.words.push_back(to);
    Word cur = to;
    for (;;) {
        const Entry& e = seen.at(cur);
        if (!e.parent) break;
        d.steps.push_back(e.step);
        cur = *e.parent;
        d.words.push_back(cur);
    }
    std::reverse(d.words.begin(), d.words.end());
    std::reverse(d.steps.begin(), d.steps.end());
    return {true, std::move(d)};
}

LogicSpec logic_of(const RewriteSystem& r) {
    std::vector<AxiomSchema> schemata;
    schemata.reserve(r.rules().size());
    for (const RewriteRule& rule : r.rules())
        schemata.push_back(
            {rule.id, word_formula(rule.lhs), word_formula(rule.rhs)});
    return LogicSpec("thue", std::move(schemata), {});
}

Formula word_formula(const Word& w) {
    Formula f = Formula::var("p");
    for (auto it = w.rbegin(); it != w.rend(); ++it) f = Formula::dia(*it, f);
    return f;
}

std::optional<Word> word_of(Formula f) {
    Word w;
    while (f.is_dia()) {
        w.push_back(f.label());
        f = f.body();
    }
    if (!f.is_var()) return std::nullopt;
    return w;
}

DeepDerivation rewrite_to_deep(const RewriteDerivation& d,
                               const RewriteSystem& r) {
    if (Verdict v = check_rewrite_derivation(d, r); !v)
        throw Error("rewrite_to_deep: input derivation invalid: " + v.message);
    DeepDerivation out;
    out.formulas.reserve(d.words.size());
    for (const Word& w : d.words) out.formulas.push_back(word_formula(w));
    out.steps.reserve(d.steps.size());
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const RewriteRule& rule = *r.find(d.steps[i].rule_id);
        auto off = static_cast<std::size_t>(d.steps[i].offset);
        Word suffix(d.words[i].begin() + static_cast<long>(off + rule.lhs.size()),
                    d.words[i].end());
        Substitution sub;
        sub.set_var("p", word_formula(suffix));
        out.steps.push_back(DeepStep::axiom(Position(off, Dir::Body), rule.id,
                                            std::move(sub)));
    }
    return out;
}

RewriteDerivation deep_to_rewrite(const DeepDerivation& d,
                                  const RewriteSystem& r) {
    LogicSpec l = logic_of(r);
    if (Verdict v = check_deep(d, l); !v)
        throw Error("deep_to_rewrite: derivation invalid in the system's "
                    "logic: " + v.message);
    if (!word_of(d.first()) || !word_of(d.last()))
        throw Error("deep_to_rewrite: endpoints are not word formulas");

    DeepDerivation n = eliminate_conjunction(eliminate_top(d, l), l);

    RewriteDerivation out;
    out.words.reserve(n.formulas.size());
    for (Formula f : n.formulas) {
        std::optional<Word> w = word_of(f);
        if (!w)
            throw Error("internal: normalization left a non-word formula " +
                        f.str());
        out.words.push_back(std::move(*w));
    }
    out.steps.reserve(n.steps.size());
    for (const DeepStep& st : n.steps)
        // every position in a word formula is a body path, so the prefix
        // length is the offset
        out.steps.push_back({st.schema_id, static_cast<int>(st.pos.size())});
    if (Verdict v = check_rewrite_derivation(out, r); !v)
        throw Error("internal: extracted rewrite derivation invalid: " +
                    v.message);
    return out;
}

std::string print_rewrite_system(const RewriteSystem& r) {
    std::ostringstream os;
    for (const RewriteRule& rule : r.rules())
        os << print_word(rule.lhs) << " -> " << print_word(rule.rhs) << "\n";
    return os.str();
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

RewriteSystem parse_rewrite_system(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<RewriteRule> rules;
    std::set<Symbol> alphabet;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(drop_comment(line));
        if (s.empty()) continue;
        std::size_t arrow = s.find("->");
        if (arrow == std::string::npos)
            throw ParseError("system text, line " + std::to_string(lineno) +
                        ": expected `lhs -> rhs`");
        RewriteRule r;
        r.id = "r" + std::to_string(rules.size() + 1);
        try {
            r.lhs = parse_word(s.substr(0, arrow));
            r.rhs = parse_word(s.substr(arrow + 2));
        } catch (const Error& e) {
            throw ParseError("system text, line " + std::to_string(lineno) + ": " +
                        e.what());
        }
        for (const Word* side : {&r.lhs, &r.rhs})
            for (const Symbol& sym : *side) alphabet.insert(sym);
        rules.push_back(std::move(r));
    }
    return RewriteSystem(std::move(alphabet), std::move(rules));
}

std::string print_rewrite_derivation(const RewriteDerivation& d) {
    if (d.words.empty()) throw Error("derivation has no words");
    std::ostringstream os;
    os << print_word(d.first()) << "\n";
    for (const RewriteStep& st : d.steps)
        os << st.rule_id << " @ " << st.offset << "\n";
    return os.str();
}

RewriteDerivation parse_rewrite_derivation(const std::string& text,
                                           const RewriteSystem& r) {
    std::istringstream in(text);
    std::string line;
    RewriteDerivation d;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(drop_comment(line));
        if (s.empty()) continue;
        if (d.words.empty()) {
            d.words.push_back(parse_word(s));
            continue;
        }
        std::size_t at = s.find('@');
        if (at == std::string::npos)
            throw ParseError("derivation text, line " + std::to_string(lineno) +
                             ": expected `rule_id @ offset`");
        std::string id = strip(s.substr(0, at));
        std::string off_tok = strip(s.substr(at + 1));
        if (off_tok.empty() || off_tok.size() > 9 ||
            off_tok.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("derivation text, line " + std::to_string(lineno) +
                             ": bad offset '" + off_tok + "'");
        const RewriteRule* rule = r.find(id);
        if (!rule)
            throw Error("derivation text, line " + std::to_string(lineno) +
                        ": unknown rule id '" + id + "'");
        int offset = std::stoi(off_tok);
        d.words.push_back(apply_rule(d.words.back(), *rule, offset));
        d.steps.push_back({id, offset});
    }
    if (d.words.empty()) throw ParseError("derivation text: no start word");
    return d;
}

} // namespace spl
