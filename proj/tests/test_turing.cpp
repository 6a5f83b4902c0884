#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaifman/eval.hpp"
#include "gaifman/families.hpp"
#include "gaifman/ord.hpp"
#include "gaifman/turing.hpp"

using namespace gaifman;

namespace {

// Unary increment: scan right over 1s, write a 1 on the first blank, accept.
TuringMachine increment_machine() {
    return TuringMachine::parse(
        "states: scan acc rej\n"
        "accept: acc\n"
        "reject: rej\n"
        "delta: (scan,1) -> (scan,1,R)\n"
        "delta: (scan,_) -> (acc,1,R)\n");
}

}  // namespace

TEST_CASE("machine text format round trip") {
    TuringMachine m = increment_machine();
    CHECK(m.start_state() == "scan");
    CHECK(m.alphabet == std::vector<std::string>{"1"});
    TuringMachine again = TuringMachine::parse(m.to_text());
    CHECK(again.states == m.states);
    CHECK(again.delta.size() == m.delta.size());
    CHECK_THROWS(TuringMachine::parse("states: a b\naccept: a\nreject: a\n"));
    CHECK_THROWS(TuringMachine::parse(
        "states: a b c\naccept: b\nreject: c\ndelta: (b,1) -> (a,1,R)\n"));
}

TEST_CASE("encode_run of the increment machine") {
    TuringMachine m = increment_machine();
    EncodedRun run = encode_run(m, "11", 6);
    CHECK(run.halted);
    CHECK(run.accepted);
    CHECK(run.steps == 3);
    REQUIRE(run.chains.size() == 4);
    // Component sizes step by one starting at |w|+2 = 4.
    for (std::size_t t = 0; t < run.chains.size(); ++t)
        CHECK(run.chains[t].size() == 4 + t);
    // The reduct is a chained-order model.
    AxiomReport rep = check_axioms(ord_reduct(run.structure));
    CHECK(rep.all_pass);
    REQUIRE(rep.decomposed);
    REQUIRE(rep.intervals.size() == 1);
    CHECK(rep.intervals[0] == std::pair<int, int>{4, 7});
}

TEST_CASE("one-step machine yields a two-component structure") {
    TuringMachine m = TuringMachine::parse(
        "states: q acc rej\n"
        "accept: acc\n"
        "reject: rej\n"
        "delta: (q,1) -> (acc,1,R)\n"
        "delta: (q,_) -> (acc,_,R)\n");
    EncodedRun run = encode_run(m, "1", 4);
    CHECK(run.halted);
    CHECK(run.chains.size() == 2);
    AxiomReport rep = check_axioms(ord_reduct(run.structure));
    CHECK(rep.all_pass);
}

TEST_CASE("theta_C holds at every element of an encoded run") {
    TuringMachine m = increment_machine();
    EncodedRun run = encode_run(m, "11", 6);
    ThetaFormulas th = theta_formulas(m, "11");
    Evaluator ev(run.structure);
    for (int v = 0; v < run.structure.domain_size(); ++v)
        CHECK(ev.eval(th.theta_c, {{"x", v}}));
}

TEST_CASE("theta_T holds exactly on the cross-links of a genuine run") {
    TuringMachine m = increment_machine();
    EncodedRun run = encode_run(m, "11", 6);
    ThetaFormulas th = theta_formulas(m, "11");
    std::set<std::pair<int, int>> expected;
    for (std::size_t t = 0; t + 1 < run.chains.size(); ++t)
        expected.insert({run.chains[t].back(), run.chains[t + 1].front()});
    Evaluator ev(run.structure);
    for (int a = 0; a < run.structure.domain_size(); ++a)
        for (int b = 0; b < run.structure.domain_size(); ++b) {
            bool holds = ev.eval(th.theta_t, {{"x", a}, {"y", b}});
            CHECK(holds == (expected.count({a, b}) > 0));
        }
}

TEST_CASE("theta_I holds exactly at the initial marker; theta_N on the last component") {
    TuringMachine m = increment_machine();
    EncodedRun run = encode_run(m, "11", 6);
    ThetaFormulas th = theta_formulas(m, "11");
    Evaluator ev(run.structure);
    for (int v = 0; v < run.structure.domain_size(); ++v) {
        CHECK(ev.eval(th.theta_i, {{"x", v}}) == (v == run.chains.front().front()));
        bool in_last = std::find(run.chains.back().begin(), run.chains.back().end(), v) !=
                       run.chains.back().end();
        CHECK(ev.eval(th.theta_n, {{"x", v}}) == in_last);
        CHECK(ev.eval(th.theta_f, {{"x", v}}) == in_last);  // final component is accepting
    }
}

TEST_CASE("empty word, immediate accept") {
    TuringMachine m = TuringMachine::parse(
        "states: q acc rej\n"
        "accept: acc\n"
        "reject: rej\n"
        "alphabet: 1\n"
        "delta: (q,_) -> (acc,_,R)\n");
    EncodedRun run = encode_run(m, "", 3);
    CHECK(run.halted);
    REQUIRE(run.chains.size() == 2);
    CHECK(run.chains[0].size() == 2);
    ThetaFormulas th = theta_formulas(m, "");
    Evaluator ev(run.structure);
    int marker = run.chains.front().front();
    CHECK(ev.eval(th.theta_i, {{"x", marker}}));
    CHECK(ev.eval(th.theta_f, {{"x", run.chains.back().front()}}));
}

TEST_CASE("phi_m variants on the genuine run") {
    TuringMachine m = increment_machine();
    EncodedRun run = encode_run(m, "11", 6);
    CHECK(eval_sentence(run.structure, phi_m(m, "11", PhiMVariant::RunExists)));
    CHECK(eval_sentence(run.structure, phi_m(m, "11", PhiMVariant::RunHalts)));
    // A non-run chained order (no theta_I component) fails the first conjunct.
    Structure plain = gen_ord(4, 7);
    Structure lifted(tm_signature(m), plain.domain_size());
    for (const char* rel : {"leq", "S", "E"}) {
        for (const Tuple& t : plain.tuples(plain.signature().index_of(rel))) lifted.add(rel, t);
    }
    CHECK(!eval_sentence(lifted, phi_m(m, "11", PhiMVariant::RunExists)));
}

TEST_CASE("every single-cell corruption kills phi_m") {
    TuringMachine m = increment_machine();
    EncodedRun run = encode_run(m, "11", 6);
    Formula halts = phi_m(m, "11", PhiMVariant::RunHalts);
    const Structure& good = run.structure;
    REQUIRE(eval_sentence(good, halts));

    std::vector<std::string> letter_rels{"P_blank", "P_1"};
    // Swap each cell's letter for every other letter.
    int corruptions = 0;
    for (int v = 0; v < good.domain_size(); ++v) {
        for (const auto& from : letter_rels) {
            if (!good.has(from, {v})) continue;
            for (const auto& to : letter_rels) {
                if (to == from) continue;
                Structure bad(good.signature(), good.domain_size());
                for (int r = 0; r < good.signature().size(); ++r) {
                    for (const Tuple& t : good.tuples(r)) {
                        if (good.signature().relation(r).name == from && t == Tuple{v}) continue;
                        bad.add(r, t);
                    }
                }
                bad.add(to, {v});
                ++corruptions;
                CAPTURE(v);
                CHECK(!eval_sentence(bad, halts));
            }
        }
    }
    CHECK(corruptions == 18);  // every non-marker cell has exactly one swap

    // State-mark corruptions: move the head mark off every marked cell.
    for (int v = 0; v < good.domain_size(); ++v) {
        for (const auto& q : {"q_scan", "q_acc", "q_rej"}) {
            if (!good.has(q, {v})) continue;
            Structure bad(good.signature(), good.domain_size());
            for (int r = 0; r < good.signature().size(); ++r)
                for (const Tuple& t : good.tuples(r)) {
                    if (good.signature().relation(r).name == q && t == Tuple{v}) continue;
                    bad.add(r, t);
                }
            CHECK(!eval_sentence(bad, halts));
            // Flip to a different state instead of dropping.
            Structure flip = bad;
            flip.add(std::string(q) == "q_scan" ? "q_acc" : "q_scan", {v});
            CHECK(!eval_sentence(flip, halts));
        }
    }
}

TEST_CASE("corrupting a letter in a middle component breaks the adjacent steps") {
    TuringMachine m = increment_machine();
    EncodedRun run = encode_run(m, "11", 6);
    ThetaFormulas th = theta_formulas(m, "11");
    // Flip the last cell of component 1 (a blank far from the head) to 1.
    int victim = run.chains[1].back();
    const Structure& good = run.structure;
    REQUIRE(good.has("P_blank", {victim}));
    Structure bad(good.signature(), good.domain_size());
    for (int r = 0; r < good.signature().size(); ++r)
        for (const Tuple& t : good.tuples(r)) {
            if (good.signature().relation(r).name == "P_blank" && t == Tuple{victim}) continue;
            bad.add(r, t);
        }
    bad.add("P_1", {victim});
    Evaluator ev(bad);
    // Frozen from evaluation: both steps touching component 1 fail, the
    // remaining step survives.
    auto link = [&](int t) {
        return ev.eval(th.theta_t,
                       {{"x", run.chains[static_cast<std::size_t>(t)].back()},
                        {"y", run.chains[static_cast<std::size_t>(t) + 1].front()}});
    };
    CHECK(!link(0));
    CHECK(!link(1));
    CHECK(link(2));
}
