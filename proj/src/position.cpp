#include "spl/position.hpp"

#include <algorithm>

#include "spl/error.hpp"

namespace spl {

std::string print_position(const Position& p) {
    if (p.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += '.';
        switch (p[i]) {
        case Dir::Left: out += "left"; break;
        case Dir::Right: out += "right"; break;
        case Dir::Body: out += "body"; break;
        }
    }
    return out;
}

Position parse_position(std::string_view text) {
    Position p;
    if (text == "-") return p;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t dot = text.find('.', i);
        std::string_view tok = text.substr(i, dot == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : dot - i);
        if (tok == "left") p.push_back(Dir::Left);
        else if (tok == "right") p.push_back(Dir::Right);
        else if (tok == "body") p.push_back(Dir::Body);
        else throw ParseError("bad position component '" + std::string(tok) + "'", i);
        if (dot == std::string_view::npos) break;
        i = dot + 1;
    }
    return p;
}

std::optional<Formula> try_subformula_at(Formula f, const Position& p) {
    for (Dir d : p) {
        switch (d) {
        case Dir::Left:
            if (!f.is_and()) return std::nullopt;
            f = f.left();
            break;
        case Dir::Right:
            if (!f.is_and()) return std::nullopt;
            f = f.right();
            break;
        case Dir::Body:
            if (!f.is_dia()) return std::nullopt;
            f = f.body();
            break;
        }
    }
    return f;
}

Formula subformula_at(Formula f, const Position& p) {
    auto sub = try_subformula_at(f, p);
    if (!sub)
        throw Error("position " + print_position(p) + " not valid in " + f.str());
    return *sub;
}

Formula replace_at(Formula f, const Position& p, Formula g) {
    if (p.empty()) return g;
    Dir d = p.front();
    Position rest(p.begin() + 1, p.end());
    switch (d) {
    case Dir::Left:
        if (!f.is_and()) break;
        return Formula::conj(replace_at(f.left(), rest, g), f.right());
    case Dir::Right:
        if (!f.is_and()) break;
        return Formula::conj(f.left(), replace_at(f.right(), rest, g));
    case Dir::Body:
        if (!f.is_dia()) break;
        return Formula::dia(f.label(), replace_at(f.body(), rest, g));
    }
    throw Error("position " + print_position(p) + " not valid in " + f.str());
}

namespace {

void walk(Formula f, Position& cur, std::vector<Position>& out) {
    out.push_back(cur);
    switch (f.kind()) {
    case Formula::Kind::Var:
    case Formula::Kind::Top: break;
    case Formula::Kind::And:
        cur.push_back(Dir::Left);
        walk(f.left(), cur, out);
        cur.back() = Dir::Right;
        walk(f.right(), cur, out);
        cur.pop_back();
        break;
    case Formula::Kind::Dia:
        cur.push_back(Dir::Body);
        walk(f.body(), cur, out);
        cur.pop_back();
        break;
    }
}

} // namespace

std::vector<Position> all_positions(Formula f) {
    std::vector<Position> out;
    Position cur;
    walk(f, cur, out);
    return out;
}

bool is_prefix(const Position& p, const Position& q) {
    return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

bool disjoint(const Position& p, const Position& q) {
    return !is_prefix(p, q) && !is_prefix(q, p);
}

Position concat(Position p, const Position& q) {
    p.insert(p.end(), q.begin(), q.end());
    return p;
}

} // namespace spl
