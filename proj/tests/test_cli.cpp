#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

// End-to-end checks against the installed binary. SPL_CLI_PATH is injected
// by the build; every invocation goes through the shell, so arguments here
// are quoted by hand.

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(SPL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/spl_cli_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("cli: parse echoes and reports format errors") {
    RunResult ok = run("parse \"<a>( p &T )\"");
    CHECK(ok.code == 0);
    CHECK(ok.out == "<a>(p & T)\n");

    CHECK(run("parse \"p |- q & r\"").out == "p |- q & r\n");
    CHECK(run("parse \"p & & q\"").code == 2);
    CHECK(run("parse \"p |-\"").code == 2);
}

TEST_CASE("cli: decide exit codes track the verdict") {
    RunResult yes = run("decide --logic k4p \"<a><a>p |- <a>p\"");
    CHECK(yes.code == 0);
    CHECK(yes.out == "true\n");

    RunResult no = run("decide --logic kp \"<a><a>p |- <a>p\"");
    CHECK(no.code == 1);
    CHECK(no.out == "false\n");

    CHECK(run("decide --logic s5p \"p |- p\"").code != 0); // undecided logic
}

TEST_CASE("cli: search output feeds check-deep") {
    std::string deriv = "/tmp/spl_cli_search.deep";
    RunResult found =
        run("search --logic kp --size 10 --steps 8 \"<a>(p & q) |- <a>p & <a>q\""
            " > " + deriv + " && " + SPL_CLI_PATH + " check-deep " + deriv);
    CHECK(found.code == 0);

    RunResult miss = run("search --logic kp --size 6 --steps 4 \"p |- <a>p\"");
    CHECK(miss.code == 1);
    CHECK(miss.out == "not found\n");
}

TEST_CASE("cli: sequent proofs round-trip through files") {
    std::string proof = write_temp("ok.seq", "andI(p & q |- q & p)[2]\n"
                                             "  andE2(p & q |- q)[0]\n"
                                             "  andE1(p & q |- p)[0]\n");
    CHECK(run("check-seq " + proof).code == 0);

    std::string deep = "/tmp/spl_cli_roundtrip.deep";
    CHECK(run("seq2deep " + proof + " > " + deep).code == 0);
    CHECK(run("check-deep " + deep).code == 0);
    CHECK(run("deep2seq " + deep + " | " + SPL_CLI_PATH +
              " check-seq /dev/stdin")
              .code == 0);

    std::string bad = write_temp("bad.seq", "id(p |- q)[0]\n");
    CHECK(run("check-seq " + bad).code == 1);
    std::string mangled = write_temp("mangled.seq", "id p |- p\n");
    CHECK(run("check-seq " + mangled).code == 2);
}

TEST_CASE("cli: normalize removes detours") {
    std::string sys = write_temp("sys.thue", "a -> b\n");
    std::string deriv = write_temp(
        "detour.deep",
        "logic: " + sys + "\n" +
            "formula: <a>p\n"
            "step: andDup @ -\n"
            "formula: <a>p & <a>p\n"
            "step: axiom @ left [schema=r1 sub=p=p]\n"
            "formula: <b>p & <a>p\n"
            "step: andE1 @ -\n"
            "formula: <b>p\n");
    RunResult r = run("normalize " + deriv);
    CHECK(r.code == 0);
    CHECK(r.out == "logic: " + sys + "\n" +
                       "formula: <a>p\n"
                       "step: axiom @ - [schema=r1 sub=p=p]\n"
                       "formula: <b>p\n");
}

TEST_CASE("cli: thue pipeline") {
    std::string sys = write_temp("swap.thue", "a b -> b a\n");

    RunResult search = run("thue search --system " + sys + " \"a b b\" \"b b a\"");
    CHECK(search.code == 0);
    CHECK(search.out == "a b b\nr1 @ 0\nr1 @ 1\n");

    // compact argument form
    CHECK(run("thue search --system " + sys + " abb bba").out == search.out);
    CHECK(run("thue search --system " + sys + " ba ab").code == 1);

    std::string rw = write_temp("swap.rw", search.out);
    CHECK(run("thue check --system " + sys + " " + rw).code == 0);

    RunResult logic = run("thue to-logic --system " + sys);
    CHECK(logic.code == 0);
    CHECK(logic.out.find("axiom r1: <a><b>p |- <b><a>p") != std::string::npos);

    std::string deep = "/tmp/spl_cli_thue.deep";
    CHECK(run("thue to-proof --system " + sys + " " + rw + " > " + deep).code ==
          0);
    CHECK(run("check-deep " + deep).code == 0);

    RunResult back = run("thue from-proof --system " + sys + " " + deep);
    CHECK(back.code == 0);
    CHECK(back.out == search.out);

    std::string stale = write_temp("stale.rw", "b a\nr1 @ 0\n");
    CHECK(run("thue check --system " + sys + " " + stale).code == 1);
}

TEST_CASE("cli: model commands") {
    CHECK(run("model eval --fixture --world 0 \"p & <a>T\"").out == "true\n");
    RunResult f = run("model eval --fixture --world 0 \"<a>p\"");
    CHECK(f.code == 1);
    CHECK(f.out == "false\n");
    CHECK(run("model truth-set --fixture \"T\"").out == "0 1\n");

    std::string model = write_temp("m.model", "worlds: 0 1 2\n"
                                              "rel a: 0->1 1->2\n"
                                              "val p: 2\n");
    CHECK(run("model eval --model " + model + " --world 1 \"<a>p\"").code == 0);
    CHECK(run("model eval --model " + model + " --world 0 \"<a>p\"").code == 1);
    CHECK(run("model truth-set --model " + model + " \"<a>p\"").out == "1\n");

    // exactly one source must be given
    CHECK(run("model eval --world 0 \"p\"").code == 2);
    CHECK(run("model eval --fixture --model " + model + " --world 0 \"p\"")
              .code == 2);
}

TEST_CASE("cli: json output is machine readable") {
    RunResult r = run("--json decide --logic kp \"p & q |- q\"");
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["sequent"] == "p & q |- q");

    std::string sys = write_temp("swap2.thue", "a b -> b a\n");
    nlohmann::json s = nlohmann::json::parse(
        run("--json thue search --system " + sys + " abb bba").out);
    CHECK(s["ok"] == true);
    CHECK(s["steps"] == 2);

    nlohmann::json bad = nlohmann::json::parse(
        run("--json check-seq " +
            write_temp("bad2.seq", "id(p |- q)[0]\n"))
            .out);
    CHECK(bad["ok"] == false);
    CHECK(bad.contains("message"));
}

TEST_CASE("cli: usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("--help").code == 0);
    CHECK(run("decide").code == 2);             // missing sequent
    CHECK(run("check-seq /nonexistent").code == 2);
    CHECK(run("search --logic nope \"p |- p\"").code == 2);
}
