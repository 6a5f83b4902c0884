// gaifman-lab: command line front end for the locality toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "accept/acceptance.hpp"
#include "gaifman/classify.hpp"
#include "gaifman/corpus.hpp"
#include "gaifman/covers.hpp"
#include "gaifman/enumerate.hpp"
#include "gaifman/eval.hpp"
#include "gaifman/families.hpp"
#include "gaifman/gnf.hpp"
#include "gaifman/local_type.hpp"
#include "gaifman/minimal.hpp"
#include "gaifman/ord.hpp"
#include "gaifman/specter_nf.hpp"
#include "gaifman/structure_io.hpp"
#include "gaifman/transform.hpp"
#include "gaifman/turing.hpp"
#include "gaifman/witness.hpp"

using namespace gaifman;
using nlohmann::json;

namespace {

struct Caps {
    int mso = 12;
    int tree = 16;
    int enumerate_bits = 24;
};

Caps caps_from_env() {
    Caps caps;
    const char* raw = std::getenv("GAIFMAN_LAB_CAPS");
    if (!raw) return caps;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) continue;
        std::string key = item.substr(0, eq);
        int value = std::stoi(item.substr(eq + 1));
        if (key == "mso") caps.mso = value;
        if (key == "tree") caps.tree = value;
        if (key == "enum") caps.enumerate_bits = value;
    }
    return caps;
}

Structure load_structure_arg(const std::string& arg) {
    // Either a file path or an inline generator spec like "path 5".
    if (arg.find(' ') != std::string::npos) return structure_from_spec(arg);
    return load_structure_file(arg);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Formula load_formula(const std::string& arg, const Signature& sig) {
    if (arg.size() > 3 && arg.substr(arg.size() - 3) == ".fo")
        return parse_formula(read_file(arg), sig);
    return parse_formula(arg, sig);
}

Tuple parse_tuple_arg(const std::string& arg) {
    Tuple t;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) t.push_back(std::stoi(item));
    return t;
}

int g_exit = 0;

void verdict_line(bool ok, const json& payload, bool as_json) {
    if (as_json) {
        std::cout << payload.dump() << "\n";
    } else {
        std::cout << (ok ? "yes" : "no") << "\n";
    }
    if (!ok) g_exit = 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gaifman-lab: finite structures, local types and positive Gaifman normal forms"};
    app.require_subcommand(1);
    Caps caps = caps_from_env();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON-lines output");

    // ---- eval ----
    auto* c_eval = app.add_subcommand("eval", "evaluate a sentence or formula on a structure");
    std::string eval_struct, eval_formula, eval_env;
    c_eval->add_option("--structure", eval_struct, "structure file or generator spec")->required();
    c_eval->add_option("--formula", eval_formula, "formula text or .fo file")->required();
    c_eval->add_option("--env", eval_env, "comma list var=element for free variables");
    c_eval->callback([&] {
        Structure s = load_structure_arg(eval_struct);
        Formula f = load_formula(eval_formula, s.signature());
        Env env;
        if (!eval_env.empty()) {
            std::stringstream ss(eval_env);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find('=');
                env[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
            }
        }
        EvalOptions opts;
        opts.mso_cap = caps.mso;
        bool ok = eval(s, f, env, {}, opts);
        verdict_line(ok, {{"op", "eval"}, {"result", ok}}, as_json);
    });

    // ---- parse ----
    auto* c_parse = app.add_subcommand("parse", "parse a formula and print its normal form");
    std::string parse_text, parse_sig;
    bool parse_expand = false;
    c_parse->add_option("--formula", parse_text, "formula text or .fo file")->required();
    c_parse->add_option("--sig", parse_sig, "signature, e.g. 'E/2 B/1'")->required();
    c_parse->add_flag("--expand-distance", parse_expand, "rewrite into pure FO");
    c_parse->callback([&] {
        Signature sig = Signature::parse(parse_sig);
        Formula f = load_formula(parse_text, sig);
        if (parse_expand) f = expand_distance(f, sig);
        json out{{"op", "parse"}, {"formula", print_formula(f)},
                 {"rank", quantifier_rank(f)}};
        if (f.is_sentence()) out["class"] = to_string(classify(f).cls);
        if (as_json)
            std::cout << out.dump() << "\n";
        else
            std::cout << print_formula(f) << "\n";
    });

    // ---- ltype / specter / leq / decompose ----
    auto* c_ltype = app.add_subcommand("ltype", "local type digest of a tuple");
    std::string lt_struct, lt_tuple;
    int lt_r = 1, lt_q = 1;
    bool lt_mso = false;
    c_ltype->add_option("--structure", lt_struct)->required();
    c_ltype->add_option("--tuple", lt_tuple, "comma list of elements")->required();
    c_ltype->add_option("--r", lt_r);
    c_ltype->add_option("--q", lt_q);
    c_ltype->add_flag("--mso", lt_mso);
    c_ltype->callback([&] {
        Structure s = load_structure_arg(lt_struct);
        Tuple t = parse_tuple_arg(lt_tuple);
        LocalTypeOptions opts;
        opts.mso_cap = caps.mso;
        LocalType ty = lt_mso ? mso_local_type(s, t, lt_r, lt_q, opts)
                              : local_type(s, t, lt_r, lt_q);
        json out{{"op", "ltype"}, {"r", lt_r}, {"q", lt_q}, {"digest", ty.digest()}};
        std::cout << (as_json ? out.dump() : ty.digest()) << "\n";
    });

    auto* c_specter = app.add_subcommand("specter", "all (q,r)-local types of k-tuples");
    std::string sp_struct;
    int sp_r = 1, sp_q = 1, sp_k = 1;
    bool sp_saturate = false;
    int sp_budget = 4;
    c_specter->add_option("--structure", sp_struct)->required();
    c_specter->add_option("--r", sp_r);
    c_specter->add_option("--q", sp_q);
    c_specter->add_option("--k", sp_k);
    c_specter->add_flag("--saturate", sp_saturate,
                        "raise (r,q) until the specter cardinality stabilizes");
    c_specter->add_option("--budget", sp_budget, "saturation step budget");
    c_specter->callback([&] {
        Structure s = load_structure_arg(sp_struct);
        if (sp_saturate) {
            int r = sp_r, q = sp_q;
            std::size_t last = specter(s, r, q, sp_k).size();
            bool stable = false;
            for (int step = 0; step < sp_budget; ++step) {
                std::size_t next = specter(s, r + 1, q + 1, sp_k).size();
                if (next == last) {
                    stable = true;
                    break;
                }
                last = next;
                ++r;
                ++q;
            }
            json out{{"op", "specter"},      {"saturated", stable}, {"r", r},
                     {"q", q},               {"k", sp_k},           {"types", last}};
            std::cout << (as_json ? out.dump()
                                  : "types=" + std::to_string(last) + " r=" + std::to_string(r) +
                                        " q=" + std::to_string(q) +
                                        (stable ? " (stable)" : " (budget hit)"))
                      << "\n";
            return;
        }
        Specter sp = specter(s, sp_r, sp_q, sp_k);
        if (as_json) {
            for (const auto& [digest, ty] : sp)
                std::cout << json{{"op", "specter"}, {"digest", digest}}.dump() << "\n";
        } else {
            std::cout << sp.size() << " types\n";
            for (const auto& [digest, ty] : sp) std::cout << digest << "\n";
        }
    });

    auto* c_leq = app.add_subcommand("leq", "locality preorder between two structures");
    std::string leq_a, leq_b;
    int leq_r = 1, leq_q = 1, leq_k = 1;
    c_leq->add_option("--a", leq_a)->required();
    c_leq->add_option("--b", leq_b)->required();
    c_leq->add_option("--r", leq_r);
    c_leq->add_option("--q", leq_q);
    c_leq->add_option("--k", leq_k);
    c_leq->callback([&] {
        Structure a = load_structure_arg(leq_a), b = load_structure_arg(leq_b);
        bool ok = preorder_leq(a, b, leq_r, leq_q, leq_k);
        verdict_line(ok, {{"op", "leq"}, {"r", leq_r}, {"q", leq_q}, {"k", leq_k}, {"result", ok}},
                     as_json);
    });

    auto* c_dec = app.add_subcommand("decompose", "disjoint-union complement of a inside b");
    std::string dec_a, dec_b;
    c_dec->add_option("--a", dec_a)->required();
    c_dec->add_option("--b", dec_b)->required();
    c_dec->callback([&] {
        Structure a = load_structure_arg(dec_a), b = load_structure_arg(dec_b);
        auto rest = find_disjoint_union_decomposition(a, b);
        if (as_json)
            std::cout << json{{"op", "decompose"}, {"found", rest.has_value()}}.dump() << "\n";
        if (rest) {
            if (!as_json) std::cout << print_structure(*rest);
        } else {
            if (!as_json) std::cout << "none\n";
            g_exit = 1;
        }
    });

    // ---- covers ----
    auto* c_cover = app.add_subcommand("cover", "extended cover of a tuple");
    std::string cov_struct, cov_tuple;
    int cov_r = 1;
    c_cover->add_option("--structure", cov_struct)->required();
    c_cover->add_option("--tuple", cov_tuple)->required();
    c_cover->add_option("--r", cov_r);
    c_cover->callback([&] {
        Structure s = load_structure_arg(cov_struct);
        CoverResult res = extended_cover(s, parse_tuple_arg(cov_tuple), cov_r);
        json centers = json::array();
        for (int v : res.centers) centers.push_back(v);
        json out{{"op", "cover"}, {"centers", centers}, {"radius", res.radius},
                 {"trace", res.trace}};
        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "centers:";
            for (int v : res.centers) std::cout << " " << v;
            std::cout << "\nradius: " << res.radius << "\n";
            for (const auto& line : res.trace) std::cout << "  " << line << "\n";
        }
    });

    auto* c_scat = app.add_subcommand("scattered", "search an (r,m)-scattered set");
    std::string scat_struct;
    int scat_r = 1, scat_m = 2;
    c_scat->add_option("--structure", scat_struct)->required();
    c_scat->add_option("--r", scat_r);
    c_scat->add_option("--m", scat_m);
    c_scat->callback([&] {
        Structure s = load_structure_arg(scat_struct);
        auto set = scattered_set(s, scat_r, scat_m);
        json out{{"op", "scattered"}, {"found", set.has_value()}};
        if (set) out["elements"] = *set;
        if (as_json)
            std::cout << out.dump() << "\n";
        else if (set) {
            for (int v : *set) std::cout << v << " ";
            std::cout << "\n";
        } else {
            std::cout << "none\n";
        }
        if (!set) g_exit = 1;
    });

    auto* c_balls = app.add_subcommand("balls", "neighborhood class of a corpus");
    std::string balls_corpus;
    int balls_r = 1, balls_k = 1;
    bool balls_dedup = true;
    c_balls->add_option("--corpus", balls_corpus, "corpus manifest or directory")->required();
    c_balls->add_option("--r", balls_r);
    c_balls->add_option("--k", balls_k);
    c_balls->add_flag("--dedup,!--no-dedup", balls_dedup, "deduplicate up to isomorphism");
    c_balls->callback([&] {
        Corpus corpus = load_corpus(balls_corpus);
        if (!balls_dedup) {
            // Raw neighborhoods, one per (structure, tuple) pair.
            std::size_t count = 0;
            for (const auto& [name, a] : corpus.items()) {
                if (a.domain_size() == 0) continue;
                for (int len = 1; len <= balls_k; ++len) {
                    Tuple t(static_cast<std::size_t>(len), 0);
                    while (true) {
                        Structure ball = neighborhood(a, t, balls_r).structure;
                        ++count;
                        if (!as_json) std::cout << print_structure(ball) << "\n";
                        int pos = len - 1;
                        while (pos >= 0 && t[static_cast<std::size_t>(pos)] == a.domain_size() - 1) {
                            t[static_cast<std::size_t>(pos)] = 0;
                            --pos;
                        }
                        if (pos < 0) break;
                        ++t[static_cast<std::size_t>(pos)];
                    }
                }
            }
            if (as_json) std::cout << json{{"op", "balls"}, {"count", count}}.dump() << "\n";
            return;
        }
        auto balls = balls_of_class(corpus.structures(), balls_r, balls_k);
        if (as_json) {
            std::cout << json{{"op", "balls"}, {"count", balls.size()}}.dump() << "\n";
        } else {
            std::cout << balls.size() << " balls up to isomorphism\n";
            for (const auto& b : balls) std::cout << print_structure(b) << "\n";
        }
    });

    auto* c_tc = app.add_subcommand("typecover", "rare/frequent type dichotomy");
    std::string tc_struct, tc_oracle = "fo";
    int tc_r = 1, tc_q = 1, tc_k = 2;
    c_tc->add_option("--structure", tc_struct)->required();
    c_tc->add_option("--r", tc_r);
    c_tc->add_option("--q", tc_q);
    c_tc->add_option("--k", tc_k);
    c_tc->add_option("--oracle", tc_oracle)->check(CLI::IsMember({"fo", "mso"}));
    c_tc->callback([&] {
        Structure s = load_structure_arg(tc_struct);
        LocalTypeOptions opts;
        opts.mso_cap = caps.mso;
        TypeCoverResult res =
            type_cover(s, tc_r, tc_q, tc_k, tc_oracle == "fo" ? TypeOracle::FO : TypeOracle::MSO,
                       opts);
        json out{{"op", "typecover"},
                 {"radius", res.radius},
                 {"radius_budget", res.radius_budget},
                 {"k_budget", res.k_budget},
                 {"rare_centers", res.rare_centers},
                 {"frequent_reps", res.frequent_reps}};
        if (as_json) {
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "R=" << res.radius << " (budget " << res.radius_budget << ")\nC:";
            for (int v : res.rare_centers) std::cout << " " << v;
            std::cout << "\nG:";
            for (int v : res.frequent_reps) std::cout << " " << v;
            std::cout << "\n";
        }
    });

    auto* c_wide = app.add_subcommand("wideness", "scattered-set report over a corpus");
    std::string wide_corpus;
    int wide_r = 1, wide_m = 2;
    c_wide->add_option("--corpus", wide_corpus)->required();
    c_wide->add_option("--r", wide_r);
    c_wide->add_option("--m", wide_m);
    c_wide->callback([&] {
        Corpus corpus = load_corpus(wide_corpus);
        WidenessReport rep = wideness_probe(corpus.items(), wide_r, wide_m);
        if (as_json) {
            for (const auto& e : rep.entries)
                std::cout << json{{"op", "wideness"},
                                  {"name", e.name},
                                  {"size", e.size},
                                  {"scattered", e.has_scattered}}
                                 .dump()
                          << "\n";
            std::cout << json{{"op", "wideness-summary"},
                              {"rho", rep.rho},
                              {"wide_consistent", rep.all_large_have_scattered}}
                             .dump()
                      << "\n";
        } else {
            for (const auto& e : rep.entries)
                std::cout << e.name << " size=" << e.size
                          << (e.has_scattered ? " scattered" : " no-scattered-set") << "\n";
            std::cout << "rho(" << wide_r << "," << wide_m << ") = " << rep.rho
                      << (rep.all_large_have_scattered ? " (consistent with wideness)"
                                                       : " (largest member has no scattered set)")
                      << "\n";
        }
    });

    // ---- gnf / diffcheck ----
    auto* c_gnf = app.add_subcommand("gnf", "positive Gaifman normal form stages");
    std::string gnf_formula, gnf_sig, gnf_stage = "all", gnf_caps, gnf_prune;
    bool gnf_full_range = false;
    c_gnf->add_option("--formula", gnf_formula)->required();
    c_gnf->add_option("--sig", gnf_sig)->required();
    c_gnf->add_option("--stage", gnf_stage)->check(CLI::IsMember({"1", "2", "3", "all"}));
    c_gnf->add_option("--caps", gnf_caps, "k=K,r=R entry caps (default k=2,r=1)");
    c_gnf->add_option("--prune", gnf_prune, "probe corpus for the template stage");
    c_gnf->add_flag("--full-range", gnf_full_range, "literal radius windows instead of ladders");
    c_gnf->callback([&] {
        Signature sig = Signature::parse(gnf_sig);
        Formula f = load_formula(gnf_formula, sig);
        GnfOptions opts;
        opts.full_range = gnf_full_range;
        opts.eval.mso_cap = caps.mso;
        if (!gnf_caps.empty()) {
            std::stringstream ss(gnf_caps);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find('=');
                if (item.substr(0, eq) == "k") opts.k_cap = std::stoi(item.substr(eq + 1));
                if (item.substr(0, eq) == "r") opts.r_cap = std::stoi(item.substr(eq + 1));
            }
        }
        if (!gnf_prune.empty()) opts.probe = load_corpus(gnf_prune).structures();
        StageResult res;
        if (gnf_stage == "1")
            res = exloc_to_almost_basic(f, opts);
        else if (gnf_stage == "2")
            res = almost_to_asymmetric(f, opts);
        else if (gnf_stage == "3")
            res = asymmetric_to_basic(f, opts);
        else
            res = positive_gaifman(f, opts);
        json classes = json::array();
        if (res.formula.kind() == FKind::Or && !res.formula.children().empty()) {
            for (const auto& c : res.formula.children())
                classes.push_back(to_string(classify(Formula(c)).cls));
        } else {
            classes.push_back(to_string(classify(res.formula).cls));
        }
        if (as_json) {
            std::cout << json{{"op", "gnf"},
                              {"stage", gnf_stage},
                              {"class", to_string(classify(res.formula).cls)},
                              {"disjunct_classes", classes},
                              {"formula", print_formula(res.formula)},
                              {"trace", res.trace}}
                             .dump()
                      << "\n";
        } else {
            for (const auto& line : res.trace) std::cout << "# " << line << "\n";
            std::cout << print_formula(res.formula) << "\n";
        }
    });

    auto* c_diff = app.add_subcommand("diffcheck", "differential equivalence over a corpus");
    std::string diff_f, diff_g, diff_corpus, diff_sig;
    c_diff->add_option("--f", diff_f)->required();
    c_diff->add_option("--g", diff_g)->required();
    c_diff->add_option("--corpus", diff_corpus)->required();
    c_diff->add_option("--sig", diff_sig, "signature (defaults to the corpus signature)");
    c_diff->callback([&] {
        Corpus corpus = load_corpus(diff_corpus);
        if (corpus.empty()) throw std::runtime_error("diffcheck: empty corpus");
        Signature sig = diff_sig.empty() ? corpus.items().front().second.signature()
                                         : Signature::parse(diff_sig);
        Formula f = load_formula(diff_f, sig);
        Formula g = load_formula(diff_g, sig);
        EvalOptions opts;
        opts.mso_cap = caps.mso;
        bool agree = true;
        for (const auto& [name, s] : corpus.items()) {
            bool fa = eval_sentence(s, f, opts), ga = eval_sentence(s, g, opts);
            if (fa != ga) {
                agree = false;
                if (as_json)
                    std::cout << json{{"op", "diffcheck"}, {"name", name}, {"f", fa}, {"g", ga}}
                                     .dump()
                              << "\n";
                else
                    std::cout << "disagree on " << name << ": f=" << fa << " g=" << ga << "\n";
            }
        }
        verdict_line(agree, {{"op", "diffcheck"}, {"agree", agree}}, as_json);
    });

    // ---- generators / axioms / tm / witness / minmodels ----
    auto* c_gen = app.add_subcommand("gen", "generate a named structure family member");
    std::vector<std::string> gen_args;
    std::string gen_out;
    c_gen->add_option("spec", gen_args, "e.g.: path 5 | cycle 6 | clique 4 | diamond 4 | "
                                        "pointed-cycle 5 | ord 2 5 | ord-b 2 5")
        ->required();
    c_gen->add_option("-o,--out", gen_out, "output file (default stdout)");
    c_gen->callback([&] {
        std::string spec;
        for (const auto& a : gen_args) spec += (spec.empty() ? "" : " ") + a;
        Structure s = structure_from_spec(spec);
        if (gen_out.empty())
            std::cout << print_structure(s);
        else
            save_structure_file(s, gen_out);
    });

    auto* c_ax = app.add_subcommand("axioms", "chained-order axioms");
    auto* c_ax_list = c_ax->add_subcommand("list", "print the twelve axioms");
    c_ax_list->callback([&] {
        for (const auto& [name, f] : axioms_ord())
            std::cout << "(" << name << ") " << print_formula(f) << "\n";
    });
    auto* c_ax_check = c_ax->add_subcommand("check", "evaluate the axioms on a structure");
    std::string ax_struct;
    c_ax_check->add_option("structure", ax_struct)->required();
    c_ax_check->callback([&] {
        Structure s = load_structure_arg(ax_struct);
        AxiomReport rep = check_axioms(s);
        if (as_json) {
            json verdicts = json::object();
            for (const auto& [name, ok] : rep.verdicts) verdicts[name] = ok;
            json intervals = json::array();
            for (auto [m, n] : rep.intervals) intervals.push_back({m, n});
            std::cout << json{{"op", "axioms"},
                              {"verdicts", verdicts},
                              {"all_pass", rep.all_pass},
                              {"decomposed", rep.decomposed},
                              {"intervals", intervals}}
                             .dump()
                      << "\n";
        } else {
            for (const auto& [name, ok] : rep.verdicts)
                std::cout << "(" << name << ") " << (ok ? "pass" : "FAIL") << "\n";
            if (rep.all_pass) {
                std::cout << "chained-order components:";
                for (auto [m, n] : rep.intervals) std::cout << " [" << m << ".." << n << "]";
                std::cout << "\n";
            }
        }
        if (!rep.all_pass) g_exit = 1;
    });

    auto* c_tm = app.add_subcommand("tm", "Turing machine run encodings");
    auto* c_tm_enc = c_tm->add_subcommand("encode", "encode a bounded run");
    std::string tm_file, tm_word, tm_out;
    int tm_steps = 16;
    c_tm_enc->add_option("machine", tm_file)->required();
    c_tm_enc->add_option("word", tm_word, "input word (may be empty)");
    c_tm_enc->add_option("--max-steps", tm_steps);
    c_tm_enc->add_option("-o,--out", tm_out);
    c_tm_enc->callback([&] {
        TuringMachine m = TuringMachine::parse(read_file(tm_file));
        EncodedRun run = encode_run(m, tm_word, tm_steps);
        if (!tm_out.empty())
            save_structure_file(run.structure, tm_out);
        else
            std::cout << print_structure(run.structure);
        std::cerr << (run.halted ? (run.accepted ? "accepted" : "rejected") : "step budget hit")
                  << " after " << run.steps << " steps; " << run.chains.size()
                  << " configurations\n";
        if (!run.halted) g_exit = 1;
    });
    auto* c_tm_phi = c_tm->add_subcommand("phi", "the run-describing sentence");
    std::string tmp_file, tmp_word, tmp_variant = "halts";
    c_tm_phi->add_option("machine", tmp_file)->required();
    c_tm_phi->add_option("word", tmp_word);
    c_tm_phi->add_option("--variant", tmp_variant)->check(CLI::IsMember({"exists", "halts"}));
    c_tm_phi->callback([&] {
        TuringMachine m = TuringMachine::parse(read_file(tmp_file));
        Formula f = phi_m(m, tmp_word,
                          tmp_variant == "halts" ? PhiMVariant::RunHalts : PhiMVariant::RunExists);
        std::cout << print_formula(f) << "\n";
    });

    auto* c_wit = app.add_subcommand("witness", "counterexample flip for an existential local sentence");
    std::string wit_formula, wit_family = "paths";
    c_wit->add_option("--formula", wit_formula, "sentence over the B-extended signature")->required();
    c_wit->add_option("--family", wit_family)->check(CLI::IsMember({"paths", "ord"}));
    c_wit->callback([&] {
        Signature sig = wit_family == "paths" ? Signature({{"E", 2}, {"B", 1}}) : Signature::ord_b();
        Formula psi = load_formula(wit_formula, sig);
        WitnessReport rep = counterexample_witness(
            psi, wit_family == "paths" ? WitnessFamily::Paths : WitnessFamily::Ord);
        if (as_json) {
            std::cout << json{{"op", "witness"},
                              {"verdict", rep.verdict},
                              {"base_size", rep.base.domain_size()},
                              {"flipped_element", rep.flipped_element},
                              {"flipped_satisfies_psi", rep.flipped_satisfies_psi},
                              {"flipped_satisfies_phi_b", rep.flipped_satisfies_phi_b}}
                             .dump()
                      << "\n";
        } else {
            std::cout << rep.verdict << " (base size " << rep.base.domain_size() << ")\n";
            if (rep.flipped) {
                std::cout << "flipped element " << rep.flipped_element << ": psi "
                          << (rep.flipped_satisfies_psi ? "holds" : "fails") << ", phi_B "
                          << (rep.flipped_satisfies_phi_b ? "holds" : "fails") << "\n";
            }
        }
    });

    auto* c_min = app.add_subcommand("minmodels", "induced-minimal models over a corpus");
    std::string min_formula, min_corpus;
    c_min->add_option("--formula", min_formula)->required();
    c_min->add_option("--corpus", min_corpus)->required();
    c_min->callback([&] {
        Corpus corpus = load_corpus(min_corpus);
        if (corpus.empty()) throw std::runtime_error("minmodels: empty corpus");
        Formula f = load_formula(min_formula, corpus.items().front().second.signature());
        EvalOptions opts;
        opts.mso_cap = caps.mso;
        auto mins = minimal_models(f, corpus.structures(), opts);
        if (as_json) {
            std::cout << json{{"op", "minmodels"}, {"count", mins.size()}}.dump() << "\n";
        } else {
            std::cout << mins.size() << " minimal models\n";
            for (const auto& m : mins) std::cout << print_structure(m) << "\n";
        }
    });

    auto* c_td = app.add_subcommand("treedepth", "exact tree-depth of a structure's Gaifman graph");
    std::string td_struct;
    c_td->add_option("--structure", td_struct)->required();
    c_td->callback([&] {
        Structure s = load_structure_arg(td_struct);
        TreeDepthOptions opts;
        opts.vertex_cap = caps.tree;
        int td = tree_depth(gaifman_graph(s), opts);
        if (as_json)
            std::cout << json{{"op", "treedepth"}, {"value", td}}.dump() << "\n";
        else
            std::cout << td << "\n";
    });

    auto* c_enum = app.add_subcommand("enumerate", "all structures over a signature up to a size");
    std::string en_sig;
    int en_max = 3;
    bool en_graphs = false, en_labeled = false, en_count = false;
    c_enum->add_option("--sig", en_sig)->required();
    c_enum->add_option("--max", en_max);
    c_enum->add_flag("--graphs", en_graphs, "binary relations symmetric and irreflexive");
    c_enum->add_flag("--labeled", en_labeled, "skip isomorphism dedup");
    c_enum->add_flag("--count-only", en_count);
    c_enum->callback([&] {
        EnumOptions opts;
        opts.graph_mode = en_graphs;
        opts.up_to_iso = !en_labeled;
        opts.bit_cap = caps.enumerate_bits;
        auto all = enumerate_structures(Signature::parse(en_sig), en_max, opts);
        if (en_count || as_json) {
            std::cout << json{{"op", "enumerate"}, {"count", all.size()}}.dump() << "\n";
        }
        if (!en_count && !as_json)
            for (const auto& s : all) std::cout << print_structure(s) << "\n";
    });

    auto* c_acc = app.add_subcommand("accept", "run the acceptance suite");
    std::string acc_suite = "all";
    c_acc->add_option("--suite", acc_suite, "all or a criterion id like AC-3");
    c_acc->callback([&] {
        std::vector<std::string> only;
        if (acc_suite != "all") only.push_back(acc_suite);
        if (!gaifman::accept::run_acceptance(std::cout, only)) g_exit = 1;
    });

    // Let --json appear after the subcommand as well.
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (CLI::App* sub : cmd->get_subcommands({})) allow_fallthrough(sub);
    };
    for (CLI::App* sub : app.get_subcommands({})) allow_fallthrough(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g_exit;
}
