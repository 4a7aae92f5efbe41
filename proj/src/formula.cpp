#include "spl/formula.hpp"

#include <array>
#include <cctype>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "spl/error.hpp"

namespace spl {

Symbol::Symbol(std::string name) : name_(std::move(name)) {
    if (!valid_name(name_))
        throw Error("invalid symbol name '" + name_ + "'");
}

bool Symbol::valid_name(std::string_view s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z')
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

struct Formula::Node {
    Kind kind;
    std::string name; // var name or dia label; empty otherwise
    const Node* a;    // And: left, Dia: body
    const Node* b;    // And: right
    int size;
    std::size_t hash;
    bool has_top;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    // splitmix-style combiner
    v += 0x9e3779b97f4a7c15ULL + h;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
}

// Hash-consing arena. Sharded to keep lock contention low when searches
// run on several threads. Nodes live for the whole process.
class Interner {
public:
    static Interner& instance() {
        static Interner in;
        return in;
    }

    const Formula::Node* get(Formula::Kind kind, std::string_view name,
                             const Formula::Node* a, const Formula::Node* b) {
        std::size_t h = mix(static_cast<std::size_t>(kind),
                            std::hash<std::string_view>{}(name));
        if (a) h = mix(h, a->hash);
        if (b) h = mix(h, b->hash);

        Shard& sh = shards_[h % kShards];
        std::lock_guard<std::mutex> lock(sh.m);
        auto& bucket = sh.table[h];
        for (const auto& n : bucket)
            if (n->kind == kind && n->name == name && n->a == a && n->b == b)
                return n.get();

        auto n = std::make_unique<Formula::Node>();
        n->kind = kind;
        n->name = std::string(name);
        n->a = a;
        n->b = b;
        n->size = 1 + (a ? a->size : 0) + (b ? b->size : 0);
        n->hash = h;
        n->has_top = kind == Formula::Kind::Top || (a && a->has_top) ||
                     (b && b->has_top);
        bucket.push_back(std::move(n));
        return bucket.back().get();
    }

private:
    static constexpr std::size_t kShards = 16;
    struct Shard {
        std::mutex m;
        std::unordered_map<std::size_t,
                           std::vector<std::unique_ptr<Formula::Node>>>
            table;
    };
    std::array<Shard, kShards> shards_;
};

} // namespace

Formula Formula::var(std::string_view name) {
    if (!Symbol::valid_name(name))
        throw Error("invalid variable name '" + std::string(name) + "'");
    return Formula(Interner::instance().get(Kind::Var, name, nullptr, nullptr));
}

Formula Formula::top() {
    return Formula(Interner::instance().get(Kind::Top, "", nullptr, nullptr));
}

Formula Formula::conj(Formula left, Formula right) {
    return Formula(Interner::instance().get(Kind::And, "", left.n_, right.n_));
}

Formula Formula::dia(const Symbol& label, Formula body) {
    return Formula(
        Interner::instance().get(Kind::Dia, label.name(), body.n_, nullptr));
}

Formula::Kind Formula::kind() const { return n_->kind; }

const std::string& Formula::var_name() const {
    if (!is_var()) throw Error("var_name() on a non-variable formula");
    return n_->name;
}

Formula Formula::left() const {
    if (!is_and()) throw Error("left() on a non-conjunction formula");
    return Formula(n_->a);
}

Formula Formula::right() const {
    if (!is_and()) throw Error("right() on a non-conjunction formula");
    return Formula(n_->b);
}

Symbol Formula::label() const {
    if (!is_dia()) throw Error("label() on a non-diamond formula");
    return Symbol(n_->name);
}

Formula Formula::body() const {
    if (!is_dia()) throw Error("body() on a non-diamond formula");
    return Formula(n_->a);
}

int Formula::size() const { return n_->size; }
bool Formula::contains_top() const { return n_->has_top; }
std::size_t Formula::hash() const { return n_->hash; }

void Formula::collect_vars(std::set<std::string>& out) const {
    switch (kind()) {
    case Kind::Var: out.insert(n_->name); break;
    case Kind::Top: break;
    case Kind::And:
        left().collect_vars(out);
        right().collect_vars(out);
        break;
    case Kind::Dia: body().collect_vars(out); break;
    }
}

void Formula::collect_symbols(std::set<Symbol>& out) const {
    switch (kind()) {
    case Kind::Var:
    case Kind::Top: break;
    case Kind::And:
        left().collect_symbols(out);
        right().collect_symbols(out);
        break;
    case Kind::Dia:
        out.insert(Symbol(n_->name));
        body().collect_symbols(out);
        break;
    }
}

std::set<std::string> Formula::vars() const {
    std::set<std::string> out;
    collect_vars(out);
    return out;
}

std::set<Symbol> Formula::symbols() const {
    std::set<Symbol> out;
    collect_symbols(out);
    return out;
}

bool Formula::operator<(const Formula& o) const {
    if (n_ == o.n_) return false;
    if (kind() != o.kind()) return kind() < o.kind();
    switch (kind()) {
    case Kind::Var: return n_->name < o.n_->name;
    case Kind::Top: return false;
    case Kind::And:
        if (left() != o.left()) return left() < o.left();
        return right() < o.right();
    case Kind::Dia:
        if (n_->name != o.n_->name) return n_->name < o.n_->name;
        return body() < o.body();
    }
    return false;
}

namespace {

void print_rec(std::ostream& os, const Formula& f, bool parens_if_and) {
    switch (f.kind()) {
    case Formula::Kind::Var: os << f.var_name(); break;
    case Formula::Kind::Top: os << 'T'; break;
    case Formula::Kind::And:
        if (parens_if_and) os << '(';
        // left-associative: the left child never needs parentheses
        print_rec(os, f.left(), false);
        os << " & ";
        print_rec(os, f.right(), true);
        if (parens_if_and) os << ')';
        break;
    case Formula::Kind::Dia:
        os << '<' << f.label().name() << '>';
        print_rec(os, f.body(), true);
        break;
    }
}

} // namespace

std::ostream& operator<<(std::ostream& os, const Formula& f) {
    print_rec(os, f, false);
    return os;
}

std::string Formula::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::string print_formula(const Formula& f) { return f.str(); }

std::string Sequent::str() const { return lhs.str() + " |- " + rhs.str(); }

std::ostream& operator<<(std::ostream& os, const Sequent& s) {
    return os << s.str();
}

std::string print_sequent(const Sequent& s) { return s.str(); }

// ---------------------------------------------------------------- parsing

namespace {

class FormulaParser {
public:
    explicit FormulaParser(std::string_view s) : s_(s) {}

    Formula parse_full_formula() {
        Formula f = parse_conj();
        skip_ws();
        if (i_ != s_.size())
            fail("unexpected trailing input");
        return f;
    }

    Sequent parse_full_sequent() {
        Formula lhs = parse_conj();
        skip_ws();
        if (!eat("|-"))
            fail("expected '|-'");
        Formula rhs = parse_conj();
        skip_ws();
        if (i_ != s_.size())
            fail("unexpected trailing input");
        return Sequent{lhs, rhs};
    }

private:
    Formula parse_conj() {
        Formula f = parse_unary();
        while (true) {
            skip_ws();
            if (i_ < s_.size() && s_[i_] == '&') {
                ++i_;
                f = Formula::conj(f, parse_unary());
            } else {
                return f;
            }
        }
    }

    Formula parse_unary() {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == '<') {
            ++i_;
            std::string name = parse_ident("modality name");
            skip_ws();
            if (i_ >= s_.size() || s_[i_] != '>')
                fail("expected '>' after modality name");
            ++i_;
            return Formula::dia(Symbol(name), parse_unary());
        }
        return parse_atom();
    }

    Formula parse_atom() {
        skip_ws();
        if (i_ >= s_.size())
            fail("unexpected end of input, expected a formula");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Formula f = parse_conj();
            skip_ws();
            if (i_ >= s_.size() || s_[i_] != ')')
                fail("expected ')'");
            ++i_;
            return f;
        }
        if (c == 'T') {
            // 'T' is the verum constant unless it starts a longer identifier,
            // which the lexical rule forbids anyway (idents start lowercase).
            ++i_;
            if (i_ < s_.size() &&
                (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                fail("identifiers must start with a lowercase letter");
            return Formula::top();
        }
        if (c >= 'a' && c <= 'z')
            return Formula::var(parse_ident("variable"));
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string parse_ident(const char* what) {
        skip_ws();
        if (i_ >= s_.size() || s_[i_] < 'a' || s_[i_] > 'z')
            fail(std::string("expected ") + what);
        std::size_t start = i_;
        while (i_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            ++i_;
        return std::string(s_.substr(start, i_ - start));
    }

    bool eat(std::string_view tok) {
        if (s_.substr(i_, tok.size()) == tok) {
            i_ += tok.size();
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (i_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, i_);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text) {
    return FormulaParser(text).parse_full_formula();
}

Sequent parse_sequent(std::string_view text) {
    return FormulaParser(text).parse_full_sequent();
}

} // namespace spl
