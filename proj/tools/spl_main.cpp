// Command-line front end over the spl library. One subcommand per run;
// exit code 0 = valid/true/found, 1 = invalid/false/not-found, 2 =
// usage or format error. --json swaps the plain output for one JSON
// object on stdout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "spl/deep.hpp"
#include "spl/error.hpp"
#include "spl/formula.hpp"
#include "spl/logic.hpp"
#include "spl/proof.hpp"
#include "spl/rewrite.hpp"
#include "spl/search.hpp"
#include "spl/semantics.hpp"

namespace {

using nlohmann::json;

// Reported with exit code 2, like CLI11's own errors.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string dir_of(const std::string& path) {
    return std::filesystem::path(path).parent_path().string();
}

spl::LogicSpec load_logic(const std::string& ref, const std::string& base_dir) {
    if (spl::LogicSpec::builtin(ref)) return *spl::LogicSpec::builtin(ref);
    std::filesystem::path p(ref);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    if (!std::filesystem::exists(p))
        throw UsageError("logic '" + ref +
                         "' is not a builtin (kp/k4p/s4p/s5p) or a file");
    return spl::resolve_logic(ref, base_dir);
}

// Words on the command line may be written compactly ("abb") when every
// character is a single-letter symbol of the system; files always use the
// spaced form.
spl::Word parse_word_arg(const std::string& text, const spl::RewriteSystem& r) {
    if (text.find(' ') == std::string::npos && text != "_" && !text.empty()) {
        bool single = true;
        spl::Word w;
        for (char c : text) {
            std::string name(1, c);
            if (!spl::Symbol::valid_name(name) ||
                !r.alphabet().count(spl::Symbol(name))) {
                single = false;
                break;
            }
            w.emplace_back(name);
        }
        if (single && !w.empty() && !r.alphabet().count(spl::Symbol(text)))
            return w;
    }
    return spl::parse_word(text);
}

void emit(bool as_json, const json& j, const std::string& plain) {
    if (as_json)
        std::cout << j.dump() << "\n";
    else if (!plain.empty())
        std::cout << plain;
}

int verdict_code(const spl::Verdict& v) { return v.ok ? 0 : 1; }

json verdict_json(const spl::Verdict& v) {
    json j{{"ok", v.ok}};
    if (!v.ok) {
        j["message"] = v.message;
        if (v.index >= 0) j["step"] = v.index;
        if (!v.path.empty()) j["path"] = v.path;
    }
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for strictly positive modal logics and word "
                 "rewriting"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit one JSON object instead of text");

    int rc = 0;

    // parse <formula-or-sequent>
    std::string parse_text;
    auto* cmd_parse = app.add_subcommand("parse", "echo in normalized form");
    cmd_parse->add_option("text", parse_text, "formula or `A |- B`")
        ->required();
    cmd_parse->callback([&] {
        std::string out;
        std::string kind;
        if (parse_text.find("|-") != std::string::npos) {
            out = spl::parse_sequent(parse_text).str();
            kind = "sequent";
        } else {
            out = spl::parse_formula(parse_text).str();
            kind = "formula";
        }
        emit(as_json, json{{"ok", true}, {"kind", kind}, {"text", out}},
             out + "\n");
        rc = 0;
    });

    // decide --logic kp|k4p|s4p <sequent>
    std::string decide_logic = "kp";
    std::string decide_text;
    auto* cmd_decide =
        app.add_subcommand("decide", "decide a sequent semantically");
    cmd_decide->add_option("--logic", decide_logic, "kp, k4p or s4p")
        ->capture_default_str();
    cmd_decide->add_option("sequent", decide_text, "`A |- B`")->required();
    cmd_decide->callback([&] {
        spl::LogicName l = spl::parse_logic_name(decide_logic);
        spl::Sequent s = spl::parse_sequent(decide_text);
        bool t = spl::decide(l, s);
        emit(as_json, json{{"ok", t}, {"sequent", s.str()}},
             std::string(t ? "true" : "false") + "\n");
        rc = t ? 0 : 1;
    });

    // search --logic <ref> --size N --steps M <sequent>
    std::string search_logic = "kp";
    int search_size = 10;
    int search_steps = 12;
    std::string search_text;
    auto* cmd_search =
        app.add_subcommand("search", "bounded forward derivation search");
    cmd_search->add_option("--logic", search_logic, "builtin key or file")
        ->capture_default_str();
    cmd_search->add_option("--size", search_size, "formula size bound")
        ->capture_default_str();
    cmd_search->add_option("--steps", search_steps, "derivation length bound")
        ->capture_default_str();
    cmd_search->add_option("sequent", search_text, "`A |- B`")->required();
    cmd_search->callback([&] {
        spl::LogicSpec l = load_logic(search_logic, ".");
        spl::Sequent s = spl::parse_sequent(search_text);
        spl::SearchResult res =
            spl::bounded_forward_search(l, s, search_size, search_steps);
        if (!res.found) {
            emit(as_json, json{{"ok", false}, {"sequent", s.str()}},
                 "not found\n");
            rc = 1;
            return;
        }
        std::string text = print_deep_derivation(*res.derivation, search_logic);
        emit(as_json,
             json{{"ok", true},
                  {"sequent", s.str()},
                  {"steps", res.derivation->length()},
                  {"derivation", text}},
             text);
        rc = 0;
    });

    // check-seq --logic <ref> <proof-file>
    std::string cs_logic = "kp";
    std::string cs_file;
    auto* cmd_cs = app.add_subcommand("check-seq", "check a sequent proof");
    cmd_cs->add_option("--logic", cs_logic, "builtin key or file")
        ->capture_default_str();
    cmd_cs->add_option("file", cs_file, "proof file")->required();
    cmd_cs->callback([&] {
        spl::LogicSpec l = load_logic(cs_logic, ".");
        spl::SequentProof p = spl::parse_proof(read_file(cs_file));
        spl::Verdict v = spl::check_sequent_proof(p, l);
        emit(as_json, verdict_json(v),
             v.ok ? "valid: " + p.conclusion().str() + "\n"
                  : "invalid: " + v.message + "\n");
        rc = verdict_code(v);
    });

    // check-deep <derivation-file>
    std::string cd_file;
    auto* cmd_cd = app.add_subcommand("check-deep", "check a deep derivation");
    cmd_cd->add_option("file", cd_file, "derivation file")->required();
    cmd_cd->callback([&] {
        auto [d, ref] = spl::parse_deep_derivation(read_file(cd_file));
        spl::LogicSpec l = load_logic(ref, dir_of(cd_file));
        spl::Verdict v = spl::check_deep(d, l);
        emit(as_json, verdict_json(v),
             v.ok ? "valid: " + d.first().str() + " |- " + d.last().str() + "\n"
                  : "invalid: " + v.message + "\n");
        rc = verdict_code(v);
    });

    // normalize <derivation-file>
    std::string nm_file;
    auto* cmd_nm = app.add_subcommand(
        "normalize", "remove T steps, then conjunction steps");
    cmd_nm->add_option("file", nm_file, "derivation file")->required();
    cmd_nm->callback([&] {
        auto [d, ref] = spl::parse_deep_derivation(read_file(nm_file));
        spl::LogicSpec l = load_logic(ref, dir_of(nm_file));
        spl::DeepDerivation n =
            spl::eliminate_conjunction(spl::eliminate_top(d, l), l);
        std::string text = print_deep_derivation(n, ref);
        emit(as_json,
             json{{"ok", true}, {"steps", n.length()}, {"derivation", text}},
             text);
        rc = 0;
    });

    // seq2deep --logic <ref> <proof-file>
    std::string sd_logic = "kp";
    std::string sd_file;
    auto* cmd_sd =
        app.add_subcommand("seq2deep", "sequent proof to deep derivation");
    cmd_sd->add_option("--logic", sd_logic, "builtin key or file")
        ->capture_default_str();
    cmd_sd->add_option("file", sd_file, "proof file")->required();
    cmd_sd->callback([&] {
        spl::LogicSpec l = load_logic(sd_logic, ".");
        spl::SequentProof p = spl::parse_proof(read_file(sd_file));
        spl::DeepDerivation d = spl::seq_to_deep(p, l);
        std::string text = print_deep_derivation(d, sd_logic);
        emit(as_json,
             json{{"ok", true}, {"steps", d.length()}, {"derivation", text}},
             text);
        rc = 0;
    });

    // deep2seq <derivation-file>
    std::string ds_file;
    auto* cmd_ds =
        app.add_subcommand("deep2seq", "deep derivation to sequent proof");
    cmd_ds->add_option("file", ds_file, "derivation file")->required();
    cmd_ds->callback([&] {
        auto [d, ref] = spl::parse_deep_derivation(read_file(ds_file));
        spl::LogicSpec l = load_logic(ref, dir_of(ds_file));
        spl::SequentProof p = spl::deep_to_seq(d, l);
        std::string text = spl::print_proof(p);
        emit(as_json,
             json{{"ok", true},
                  {"conclusion", p.conclusion().str()},
                  {"proof", text}},
             text);
        rc = 0;
    });

    // thue ...
    auto* cmd_thue = app.add_subcommand("thue", "word rewriting commands");
    cmd_thue->require_subcommand(1);

    std::string th_system;
    std::string th_from, th_to;
    int th_max_len = 16;
    int th_max_steps = 100000;
    auto* th_search = cmd_thue->add_subcommand("search", "bounded reachability");
    th_search->add_option("--system", th_system, "system file")->required();
    th_search->add_option("from,--from", th_from, "start word")->required();
    th_search->add_option("to,--to", th_to, "target word")->required();
    th_search->add_option("--max-len", th_max_len, "word length bound")
        ->capture_default_str();
    th_search->add_option("--max-steps", th_max_steps, "expansion budget")
        ->capture_default_str();
    th_search->callback([&] {
        spl::RewriteSystem r = spl::parse_rewrite_system(read_file(th_system));
        spl::Word from = parse_word_arg(th_from, r);
        spl::Word to = parse_word_arg(th_to, r);
        spl::ReachResult res =
            spl::reachable(r, from, to, th_max_len, th_max_steps);
        if (!res.found) {
            emit(as_json, json{{"ok", false}}, "not found\n");
            rc = 1;
            return;
        }
        std::string text = spl::print_rewrite_derivation(*res.derivation);
        emit(as_json,
             json{{"ok", true},
                  {"steps", res.derivation->length()},
                  {"derivation", text}},
             text);
        rc = 0;
    });

    std::string tc_system, tc_file;
    auto* th_check = cmd_thue->add_subcommand("check", "check a derivation");
    th_check->add_option("--system", tc_system, "system file")->required();
    th_check->add_option("file", tc_file, "derivation file")->required();
    th_check->callback([&] {
        spl::RewriteSystem r = spl::parse_rewrite_system(read_file(tc_system));
        spl::RewriteDerivation d =
            spl::parse_rewrite_derivation(read_file(tc_file), r);
        spl::Verdict v = spl::check_rewrite_derivation(d, r);
        emit(as_json, verdict_json(v),
             v.ok ? "valid: " + print_word(d.first()) + " -> " +
                        print_word(d.last()) + "\n"
                  : "invalid: " + v.message + "\n");
        rc = verdict_code(v);
    });

    std::string tl_system;
    auto* th_logic =
        cmd_thue->add_subcommand("to-logic", "print the induced logic");
    th_logic->add_option("--system", tl_system, "system file")->required();
    th_logic->callback([&] {
        spl::RewriteSystem r = spl::parse_rewrite_system(read_file(tl_system));
        std::string text = spl::print_logic(spl::logic_of(r));
        emit(as_json, json{{"ok", true}, {"logic", text}}, text);
        rc = 0;
    });

    std::string tp_system, tp_file;
    auto* th_proof = cmd_thue->add_subcommand(
        "to-proof", "rewrite derivation to deep derivation");
    th_proof->add_option("--system", tp_system, "system file")->required();
    th_proof->add_option("file", tp_file, "rewrite derivation file")
        ->required();
    th_proof->callback([&] {
        spl::RewriteSystem r = spl::parse_rewrite_system(read_file(tp_system));
        spl::RewriteDerivation d =
            spl::parse_rewrite_derivation(read_file(tp_file), r);
        spl::DeepDerivation out = spl::rewrite_to_deep(d, r);
        std::string text = print_deep_derivation(out, tp_system);
        emit(as_json,
             json{{"ok", true}, {"steps", out.length()}, {"derivation", text}},
             text);
        rc = 0;
    });

    std::string tf_system, tf_file;
    auto* th_from_proof = cmd_thue->add_subcommand(
        "from-proof", "deep derivation back to a rewrite derivation");
    th_from_proof->add_option("--system", tf_system, "system file")->required();
    th_from_proof->add_option("file", tf_file, "deep derivation file")
        ->required();
    th_from_proof->callback([&] {
        spl::RewriteSystem r = spl::parse_rewrite_system(read_file(tf_system));
        auto [d, ref] = spl::parse_deep_derivation(read_file(tf_file));
        spl::RewriteDerivation out = spl::deep_to_rewrite(d, r);
        std::string text = spl::print_rewrite_derivation(out);
        emit(as_json,
             json{{"ok", true}, {"steps", out.length()}, {"derivation", text}},
             text);
        rc = 0;
    });

    // model ...
    auto* cmd_model = app.add_subcommand("model", "Kripke model commands");
    cmd_model->require_subcommand(1);

    std::string me_file;
    bool me_fixture = false;
    int me_world = 0;
    std::string me_formula;
    auto* m_eval = cmd_model->add_subcommand("eval", "truth at a world");
    m_eval->add_option("--model", me_file, "model file");
    m_eval->add_flag("--fixture", me_fixture, "use the two-world fixture");
    m_eval->add_option("--world", me_world, "world id")->required();
    m_eval->add_option("formula", me_formula, "formula text")->required();
    m_eval->callback([&] {
        if (me_fixture == !me_file.empty())
            throw UsageError("pass exactly one of --model or --fixture");
        spl::KripkeModel m = me_fixture
                                 ? spl::fixture_model()
                                 : spl::parse_model(read_file(me_file));
        spl::Formula f = spl::parse_formula(me_formula);
        bool t = spl::eval(m, me_world, f);
        emit(as_json, json{{"ok", t}, {"world", me_world}},
             std::string(t ? "true" : "false") + "\n");
        rc = t ? 0 : 1;
    });

    std::string mt_file;
    bool mt_fixture = false;
    std::string mt_formula;
    auto* m_truth =
        cmd_model->add_subcommand("truth-set", "worlds where a formula holds");
    m_truth->add_option("--model", mt_file, "model file");
    m_truth->add_flag("--fixture", mt_fixture, "use the two-world fixture");
    m_truth->add_option("formula", mt_formula, "formula text")->required();
    m_truth->callback([&] {
        if (mt_fixture == !mt_file.empty())
            throw UsageError("pass exactly one of --model or --fixture");
        spl::KripkeModel m = mt_fixture
                                 ? spl::fixture_model()
                                 : spl::parse_model(read_file(mt_file));
        spl::Formula f = spl::parse_formula(mt_formula);
        std::set<spl::WorldId> ws = spl::truth_set(m, f);
        std::string plain;
        for (spl::WorldId w : ws) {
            if (!plain.empty()) plain += ' ';
            plain += std::to_string(w);
        }
        emit(as_json, json{{"ok", true}, {"worlds", ws}}, plain + "\n");
        rc = 0;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const spl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const spl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
