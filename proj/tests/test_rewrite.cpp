#include "doctest.h"

#include "spl/error.hpp"
#include "spl/rewrite.hpp"

#include "support/gen.hpp"

using namespace spl;

namespace {

Word W(const char* spaced) { return parse_word(spaced); }

bool normalized_steps_absent(const DeepDerivation& d) {
    for (const DeepStep& st : d.steps)
        if (st.rule != DeepRule::Axiom) return false;
    return true;
}

} // namespace

TEST_CASE("word text form") {
    CHECK(print_word({}) == "_");
    CHECK(print_word(W("a b a")) == "a b a");
    CHECK(parse_word("_").empty());
    CHECK(parse_word("  a   b ") == W("a b"));
    CHECK_THROWS_AS(parse_word(""), ParseError);
    CHECK_THROWS_AS(parse_word("a 2b"), ParseError);
}

TEST_CASE("apply_rule") {
    RewriteRule swap{"r1", W("a b"), W("b a")};
    CHECK(apply_rule(W("a b b"), swap, 0) == W("b a b"));
    CHECK(apply_rule(W("b a b"), swap, 1) == W("b b a"));
    CHECK_THROWS_AS(apply_rule(W("b a b"), swap, 0), Error);
    CHECK_THROWS_AS(apply_rule(W("a b"), swap, 5), Error);

    RewriteRule insert{"r2", {}, W("c")};
    CHECK(apply_rule(W("a b"), insert, 1) == W("a c b"));
    CHECK(apply_rule(W("a b"), insert, 2) == W("a b c"));

    RewriteRule del{"r3", W("a"), {}};
    CHECK(apply_rule(W("b a b"), del, 1) == W("b b"));
}

TEST_CASE("check_rewrite_derivation") {
    RewriteSystem r = parse_rewrite_system("a b -> b a\n");
    RewriteDerivation good{{W("a b b"), W("b a b"), W("b b a")},
                           {{"r1", 0}, {"r1", 1}}};
    CHECK(check_rewrite_derivation(good, r).ok);

    CHECK(check_rewrite_derivation({{W("a b")}, {}}, r).ok);

    RewriteDerivation stale{{W("a b"), W("a b")}, {{"r1", 0}}};
    Verdict v = check_rewrite_derivation(stale, r);
    CHECK_FALSE(v.ok);
    CHECK(v.index == 0);

    RewriteDerivation unknown{{W("a b"), W("b a")}, {{"zz", 0}}};
    CHECK_FALSE(check_rewrite_derivation(unknown, r).ok);
}

TEST_CASE("reachable") {
    RewriteSystem r = parse_rewrite_system("a b -> b a\n");

    ReachResult hit = reachable(r, W("a b b"), W("b b a"), 16, 100000);
    REQUIRE(hit.found);
    CHECK(hit.derivation->length() == 2);
    CHECK(check_rewrite_derivation(*hit.derivation, r).ok);

    ReachResult self = reachable(r, W("a b"), W("a b"), 16, 100000);
    REQUIRE(self.found);
    CHECK(self.derivation->length() == 0);

    // the system only moves a's to the right; the space is finite
    CHECK_FALSE(reachable(r, W("b a"), W("a b"), 16, 100000).found);

    // budget zero still answers the reflexive query
    CHECK(reachable(r, W("a"), W("a"), 16, 0).found);

    gen::Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        RewriteSystem sys = gen::random_system(rng);
        Word from = gen::random_word(rng, sys, gen::pick(rng, 1, 3));
        Word to = gen::random_word(rng, sys, gen::pick(rng, 1, 3));
        ReachResult res = reachable(sys, from, to, 8, 2000);
        if (res.found) {
            CHECK(check_rewrite_derivation(*res.derivation, sys).ok);
            CHECK(res.derivation->first() == from);
            CHECK(res.derivation->last() == to);
        }
    }
}

TEST_CASE("reachable is deterministic") {
    RewriteSystem r = parse_rewrite_system("a -> b\nb -> a\na a -> _\n");
    ReachResult x = reachable(r, W("a a a"), W("b"), 8, 5000);
    ReachResult y = reachable(r, W("a a a"), W("b"), 8, 5000);
    REQUIRE(x.found);
    REQUIRE(y.found);
    CHECK(*x.derivation == *y.derivation);
}

TEST_CASE("logic_of") {
    RewriteSystem r = parse_rewrite_system("a b -> b a\n");
    LogicSpec l = logic_of(r);
    REQUIRE(l.schemata().size() == 1);
    CHECK(l.schemata()[0].id == "r1");
    CHECK(l.schemata()[0].lhs == parse_formula("<a><b>p"));
    CHECK(l.schemata()[0].rhs == parse_formula("<b><a>p"));
    CHECK(l.mod_metavars().empty());
    CHECK(l.is_word_style());

    CHECK(logic_of(RewriteSystem({}, {})).schemata().empty());

    RewriteSystem erase = parse_rewrite_system("a -> _\n");
    CHECK(logic_of(erase).schemata()[0].lhs == parse_formula("<a>p"));
    CHECK(logic_of(erase).schemata()[0].rhs == parse_formula("p"));
}

TEST_CASE("word_formula and word_of invert each other") {
    CHECK(word_formula(W("a b")) == parse_formula("<a><b>p"));
    CHECK(word_formula({}) == parse_formula("p"));
    CHECK(word_of(parse_formula("<a><b>q")) == W("a b")); // any variable works
    CHECK(word_of(parse_formula("p")) == Word{});
    CHECK_FALSE(word_of(parse_formula("p & q")).has_value());
    CHECK_FALSE(word_of(parse_formula("<a>T")).has_value());
    CHECK_FALSE(word_of(parse_formula("<a>(p & p)")).has_value());
}

TEST_CASE("rewrite_to_deep") {
    RewriteSystem r = parse_rewrite_system("a b -> b a\n");
    RewriteDerivation d{{W("a b b"), W("b a b"), W("b b a")},
                        {{"r1", 0}, {"r1", 1}}};
    DeepDerivation deep = rewrite_to_deep(d, r);
    CHECK(deep.formulas ==
          std::vector<Formula>{parse_formula("<a><b><b>p"),
                               parse_formula("<b><a><b>p"),
                               parse_formula("<b><b><a>p")});
    CHECK(check_deep(deep, logic_of(r)).ok);

    DeepDerivation single = rewrite_to_deep({{W("a b")}, {}}, r);
    CHECK(single.formulas == std::vector<Formula>{parse_formula("<a><b>p")});

    DeepDerivation one = rewrite_to_deep(
        {{W("a b"), W("b a")}, {{"r1", 0}}}, r);
    REQUIRE(one.length() == 1);
    CHECK(one.steps[0].rule == DeepRule::Axiom);
    CHECK(one.steps[0].pos.empty());
    CHECK(one.steps[0].sub.var("p") == Formula::var("p"));
}

TEST_CASE("deep_to_rewrite") {
    RewriteSystem r = parse_rewrite_system("a b -> b a\n");
    RewriteDerivation d{{W("a b b"), W("b a b"), W("b b a")},
                        {{"r1", 0}, {"r1", 1}}};
    RewriteDerivation back = deep_to_rewrite(rewrite_to_deep(d, r), r);
    CHECK(check_rewrite_derivation(back, r).ok);
    CHECK(back.first() == W("a b b"));
    CHECK(back.last() == W("b b a"));

    // conjunction detour collapses to the single rule application
    RewriteSystem ab = parse_rewrite_system("a -> b\n");
    LogicSpec l = logic_of(ab);
    Substitution s;
    s.set_var("p", Formula::var("p"));
    DeepDerivation detour{
        {parse_formula("<a>p"), parse_formula("<a>p & <a>p"),
         parse_formula("<b>p & <a>p"), parse_formula("<b>p")},
        {DeepStep::and_dup({}), DeepStep::axiom({Dir::Left}, "r1", s),
         DeepStep::and_e1({})}};
    REQUIRE(check_deep(detour, l).ok);
    RewriteDerivation rd = deep_to_rewrite(detour, ab);
    CHECK(rd.words == std::vector<Word>{W("a"), W("b")});
    CHECK(check_rewrite_derivation(rd, ab).ok);

    RewriteDerivation none =
        deep_to_rewrite({{parse_formula("<a>p")}, {}}, ab);
    CHECK(none.words == std::vector<Word>{W("a")});
    CHECK(none.length() == 0);

    // non-word endpoints are rejected
    CHECK_THROWS_AS(
        deep_to_rewrite({{parse_formula("<a>p & <a>p")}, {}}, ab), Error);
}

TEST_CASE("round-trip through the deep calculus") {
    gen::Rng rng(42);
    for (int i = 0; i < 60; ++i) {
        RewriteSystem r = gen::random_system(rng);
        RewriteDerivation d =
            gen::random_rewrite_derivation(rng, r, gen::pick(rng, 0, 8));
        DeepDerivation deep = rewrite_to_deep(d, r);
        CAPTURE(print_rewrite_derivation(d));
        CHECK(check_deep(deep, logic_of(r)).ok);
        CHECK(word_of(deep.first()) == d.first());
        CHECK(word_of(deep.last()) == d.last());

        RewriteDerivation back = deep_to_rewrite(deep, r);
        CHECK(check_rewrite_derivation(back, r).ok);
        CHECK(back.first() == d.first());
        CHECK(back.last() == d.last());
    }
}

TEST_CASE("normalization strips adversarial detours") {
    gen::Rng rng(43);
    for (int i = 0; i < 25; ++i) {
        RewriteSystem r = gen::random_system(rng);
        LogicSpec l = logic_of(r);
        RewriteDerivation d =
            gen::random_rewrite_derivation(rng, r, gen::pick(rng, 0, 6));
        DeepDerivation deep = rewrite_to_deep(d, r);

        // lift the whole thing under a diamond prefix, then add noise
        std::vector<Symbol> syms(r.alphabet().begin(), r.alphabet().end());
        Word prefix;
        for (int k = gen::pick(rng, 0, 2); k > 0; --k)
            prefix.push_back(gen::choice(rng, syms));
        DeepDerivation lifted = context_lift(deep, Context::dia_word(prefix));
        DeepDerivation noisy =
            gen::inject_detours(rng, lifted, l, gen::pick(rng, 1, 4));
        REQUIRE(check_deep(noisy, l).ok);

        RewriteDerivation back = deep_to_rewrite(noisy, r);
        CHECK(check_rewrite_derivation(back, r).ok);
        CHECK(word_of(noisy.first()) == back.first());
        CHECK(word_of(noisy.last()) == back.last());

        DeepDerivation flat = eliminate_conjunction(eliminate_top(noisy, l), l);
        CHECK(normalized_steps_absent(flat));
        CHECK(flat.length() <= noisy.length());
    }
}

TEST_CASE("system text form") {
    RewriteSystem r = parse_rewrite_system("# comment\n"
                                           "a b -> b a\n"
                                           "_ -> c\n"
                                           "c -> _\n");
    REQUIRE(r.rules().size() == 3);
    CHECK(r.rules()[0].id == "r1");
    CHECK(r.rules()[1].lhs.empty());
    CHECK(r.rules()[2].rhs.empty());
    CHECK(r.alphabet() == std::set<Symbol>{Symbol{"a"}, Symbol{"b"},
                                           Symbol{"c"}});

    RewriteSystem back = parse_rewrite_system(print_rewrite_system(r));
    CHECK(back.rules() == r.rules());
    CHECK(back.alphabet() == r.alphabet());

    CHECK_THROWS_AS(parse_rewrite_system("a b b a\n"), ParseError);
    CHECK_THROWS_AS(parse_rewrite_system("a 2b -> a\n"), ParseError);

    // degenerate but legal: no rules, and a rule with two empty sides
    CHECK(parse_rewrite_system("# nothing\n").rules().empty());
    RewriteSystem noop = parse_rewrite_system("_ -> _\n");
    CHECK(noop.rules()[0].lhs.empty());
    CHECK(noop.rules()[0].rhs.empty());
}

TEST_CASE("derivation text replays against the system") {
    RewriteSystem r = parse_rewrite_system("a b -> b a\n");
    RewriteDerivation d{{W("a b b"), W("b a b"), W("b b a")},
                        {{"r1", 0}, {"r1", 1}}};
    std::string text = print_rewrite_derivation(d);
    RewriteDerivation back = parse_rewrite_derivation(text, r);
    CHECK(back == d);
    CHECK(print_rewrite_derivation(back) == text);

    // unknown rule and failed replay are semantic errors
    CHECK_THROWS_AS(parse_rewrite_derivation("a b\nzz @ 0\n", r), Error);
    CHECK_THROWS_AS(parse_rewrite_derivation("b a\nr1 @ 0\n", r), Error);
    // malformed lines are format errors
    CHECK_THROWS_AS(parse_rewrite_derivation("", r), ParseError);
    CHECK_THROWS_AS(parse_rewrite_derivation("a b\nr1 at 0\n", r), ParseError);
    CHECK_THROWS_AS(parse_rewrite_derivation("a b\nr1 @ x\n", r), ParseError);
}
