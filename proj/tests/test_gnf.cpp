#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaifman/enumerate.hpp"
#include "gaifman/families.hpp"
#include "gaifman/gnf.hpp"
#include "gaifman/structure_io.hpp"
#include "gaifman/template_graph.hpp"
#include "gaifman/transform.hpp"

using namespace gaifman;

namespace {

const Signature kTwo = Signature::two_colors();
const Signature kColored = Signature::colored_graph();

std::vector<Structure> colored_corpus(int max_size) {
    EnumOptions opts;
    opts.graph_mode = true;
    return enumerate_structures(kColored, max_size, opts);
}

std::vector<Structure> two_color_corpus(int max_size) {
    return enumerate_structures(kTwo, max_size);
}

// Deterministically colored families for larger differential checks.
Structure color_graph(const Structure& g, int gp, int bp) {
    Structure s(kColored, g.domain_size());
    for (const Tuple& t : g.tuples(0)) s.add(0, t);
    for (int v = 0; v < g.domain_size(); ++v) {
        if (v % gp == 0) s.add("G", {v});
        if (v % bp == 1) s.add("B", {v});
    }
    return s;
}

void check_differential(const Formula& a, const Formula& b, const std::vector<Structure>& corpus) {
    for (const auto& s : corpus) {
        CAPTURE(s.domain_size());
        CAPTURE(print_structure(s));
        CHECK(eval_sentence(s, a) == eval_sentence(s, b));
    }
}

}  // namespace

TEST_CASE("template graph build, ordering and union") {
    Structure p5 = gen_path(5);
    Evaluator ev(p5);
    std::vector<Formula> q{parse_formula("exists y in N[1](_p). E(_p,y)", Signature::graph())};
    TemplateGraph g = build_template_graph(ev, {0, 3}, 4, q);
    CHECK(g.n == 2);
    REQUIRE(g.edges.count({0, 1}));
    CHECK(g.edges.at({0, 1}) == 3);

    TemplateGraph far = build_template_graph(ev, {0, 4}, 3, q);
    CHECK(far.edges.empty());

    TemplateGraph single = build_template_graph(ev, {2, 2}, 3, q);
    CHECK(single.n == 1);
    CHECK(single.edges.empty());

    CHECK(tg_leq(g, g));
    CHECK(!tg_leq(g, far));
    TemplateGraph u = tg_union(single, far);
    CHECK(u.n == 3);
    CHECK(u.edges.empty());

    // Colorless point rejected.
    Structure iso(Signature::graph(), 2);
    Evaluator ev2(iso);
    CHECK_THROWS(build_template_graph(ev2, {0}, 1, q));
}

TEST_CASE("graph representation fact: theta_G finds represented templates") {
    std::vector<Formula> q{parse_formula("G(_p)", kColored), parse_formula("B(_p)", kColored)};
    int R = 2, r = 1;
    std::vector<Structure> corpus = colored_corpus(4);
    // A couple of template graphs to probe.
    std::vector<TemplateGraph> templates;
    {
        TemplateGraph g1;  // one G-colored vertex
        g1.n = 1;
        g1.colors = {1u};
        templates.push_back(g1);
        TemplateGraph g2;  // G and B at distance exactly 1
        g2.n = 2;
        g2.colors = {1u, 2u};
        g2.edges[{0, 1}] = 1;
        templates.push_back(g2);
        TemplateGraph g3;  // two far-apart G vertices
        g3.n = 2;
        g3.colors = {1u, 1u};
        templates.push_back(g3);
    }
    for (const TemplateGraph& g : templates) {
        Formula theta = theta_g(g, q, R, r);
        for (const Structure& s : corpus) {
            Evaluator ev(s);
            auto dist = all_pairs_distances(gaifman_graph(s));
            for (int a = 0; a < s.domain_size(); ++a) {
                // Brute-force: some tuple in N[R](a) with G_b <= template and
                // contained r-balls.
                bool expected = false;
                std::vector<int> ball;
                for (int v = 0; v < s.domain_size(); ++v)
                    if (dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)] <= R)
                        ball.push_back(v);
                std::vector<int> pick(static_cast<std::size_t>(g.n), 0);
                while (!expected) {
                    bool colored = true;
                    Tuple t;
                    for (int i = 0; i < g.n && colored; ++i) {
                        int v = ball.empty() ? -1 : ball[pick[static_cast<std::size_t>(i)]];
                        if (v < 0) {
                            colored = false;
                            break;
                        }
                        t.push_back(v);
                        std::uint32_t mask = 0;
                        for (std::size_t c = 0; c < q.size(); ++c)
                            if (ev.eval(q[c], {{"_p", v}})) mask |= 1u << c;
                        if (mask == 0) colored = false;
                    }
                    if (colored && static_cast<int>(t.size()) == g.n) {
                        bool distinct = true;
                        for (std::size_t i = 0; i < t.size() && distinct; ++i)
                            for (std::size_t j = i + 1; j < t.size() && distinct; ++j)
                                if (t[i] == t[j]) distinct = false;
                        if (distinct) {
                            TemplateGraph built = build_template_graph(ev, t, R, q);
                            bool contained = true;
                            for (int v : t)
                                for (int u = 0; u < s.domain_size() && contained; ++u)
                                    if (dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] <= r &&
                                        dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(u)] > R)
                                        contained = false;
                            if (contained && tg_leq(g, built)) expected = true;
                        }
                    }
                    if (ball.empty()) break;
                    std::size_t pos = pick.size();
                    while (pos > 0 && pick[pos - 1] == ball.size() - 1) pick[--pos] = 0;
                    if (pos == 0) break;
                    ++pick[pos - 1];
                }
                CAPTURE(a);
                CHECK(eval(s, theta, {{"x", a}}) == expected);
            }
        }
    }
}

TEST_CASE("template union fact on separated tuples") {
    std::vector<Formula> q{parse_formula("G(_p)", kColored)};
    Structure two = disjoint_union(color_graph(gen_path(3), 1, 99), color_graph(gen_path(4), 1, 99));
    Evaluator ev(two);
    int R = 2;
    TemplateGraph left = build_template_graph(ev, {0, 2}, R, q);
    TemplateGraph right = build_template_graph(ev, {3, 5}, R, q);
    TemplateGraph both = build_template_graph(ev, {0, 2, 3, 5}, R, q);
    CHECK(tg_leq(tg_union(left, right), both));
    CHECK(tg_leq(both, tg_union(left, right)));
}

TEST_CASE("security cylinders transfer template detection") {
    std::vector<Formula> q{parse_formula("G(_p)", kColored), parse_formula("B(_p)", kColored)};
    int r = 1, R = 2;
    Formula pi = pi_q(kColored, R, r, q);
    std::vector<Structure> corpus;
    for (int n = 4; n <= 9; ++n) corpus.push_back(color_graph(gen_path(n), 2, 3));
    corpus.push_back(color_graph(gen_cycle(6), 2, 3));
    TemplateGraph g;
    g.n = 1;
    g.colors = {1u};
    Formula theta = theta_g(g, q, R, r);
    for (const Structure& s : corpus) {
        Evaluator ev(s);
        auto dist = all_pairs_distances(gaifman_graph(s));
        for (int a = 0; a < s.domain_size(); ++a)
            for (int b = 0; b < s.domain_size(); ++b) {
                if (dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] > 2 * R) continue;
                if (ev.eval(theta, {{"x", a}}) && ev.eval(pi, {{"x", b}}))
                    CHECK(ev.eval(theta, {{"x", b}}));
            }
    }
}

TEST_CASE("pi_q with no properties is vacuous") {
    Formula pi = pi_q(Signature::graph(), 2, 1, {});
    CHECK(eval(gen_path(4), pi, {{"x", 0}}));
}

TEST_CASE("obtainable and multiset validity") {
    TemplateGraph g;
    g.n = 1;
    g.colors = {1u};
    TemplateGraph h;
    h.n = 1;
    h.colors = {2u};

    auto obt1 = obtainable({{g}});
    CHECK(obt1.size() == 1);

    auto obt2 = obtainable({{g}, {g}});
    // {g, g ⊎ g}
    CHECK(obt2.size() == 2);

    // Two singleton collections with different colors: the union carries one
    // vertex of each color at infinite distance: valid for k=2.
    CHECK(is_valid_multiset({{g}, {h}}, {0, 1}, 2));
    // A single collection cannot produce both colors.
    CHECK(!is_valid_multiset({{g}}, {0, 1}, 2));
    // Same color twice across two collections: valid for same-color pair.
    CHECK(is_valid_multiset({{g}, {g}}, {0, 0}, 2));

    // A 2-vertex graph joined at weight exactly 2r is invalid at threshold 2r.
    TemplateGraph joined2;
    joined2.n = 2;
    joined2.colors = {1u, 2u};
    joined2.edges[{0, 1}] = 2;
    CHECK(!is_valid_multiset({{joined2}}, {0, 1}, 2));
    CHECK(is_valid_multiset({{joined2}}, {0, 1}, 1));
}

TEST_CASE("remove_variable drops the piece and weakens") {
    Formula f = parse_formula("exists x1. exists x2. dist>(x1,x2,2) & G(x1) & B(x2)", kTwo);
    Formula f1 = remove_variable(f, 1);
    CHECK(f1 == parse_formula("exists x2. B(x2)", kTwo));
    Formula f2 = remove_variable(f, 2);
    CHECK(f2 == parse_formula("exists x1. G(x1)", kTwo));
    CHECK_THROWS(remove_variable(f, 3));
    Formula single = parse_formula("exists x1. G(x1)", kTwo);
    CHECK(is_true(remove_variable(single, 1)));

    for (const Structure& s : two_color_corpus(4)) {
        if (eval_sentence(s, f)) {
            CHECK(eval_sentence(s, f1));
            CHECK(eval_sentence(s, f2));
        }
    }
}

TEST_CASE("repetition shorthand and the frequent-witness implication") {
    Formula psi = parse_formula("G(_p)", kTwo);
    Formula rep = exists_scattered(2, 2, psi, "_p");
    auto cls = classify(rep);
    CHECK(cls.cls == SentenceClass::BasicLocal);
    CHECK(cls.k == 2);

    Formula f = parse_formula("exists x1. exists x2. dist>(x1,x2,2) & G(x1) & B(x2)", kTwo);
    for (const Structure& s : two_color_corpus(5)) {
        // f/1 and k scattered G-witnesses imply f.
        bool lhs = eval_sentence(s, remove_variable(f, 1)) && eval_sentence(s, rep);
        if (lhs) CHECK(eval_sentence(s, f));
    }
}

TEST_CASE("stage 1 differential on the far-pair sentence") {
    Formula f = parse_formula("exists x. exists y. dist>(x,y,2)", Signature::graph());
    GnfOptions opts;
    StageResult s1 = exloc_to_almost_basic(f, opts);
    // Every emitted disjunct is almost basic local.
    std::vector<Formula> disjuncts;
    if (s1.formula.kind() == FKind::Or)
        for (const auto& c : s1.formula.children()) disjuncts.emplace_back(c);
    else
        disjuncts.push_back(s1.formula);
    for (const Formula& d : disjuncts) {
        auto cls = classify(d);
        CHECK(cls.cls <= SentenceClass::AlmostBasicLocal);
    }
    std::vector<Structure> corpus = enumerate_graphs(5);
    for (int n = 3; n <= 14; ++n) corpus.push_back(gen_path(n));
    for (int n = 3; n <= 14; ++n) corpus.push_back(gen_cycle(n));
    corpus.push_back(disjoint_union(gen_path(3), gen_path(2)));
    corpus.push_back(disjoint_union(gen_cycle(3), gen_cycle(3)));
    check_differential(f, s1.formula, corpus);
}

TEST_CASE("stage 1 k=1 keeps the sentence as its own cover") {
    Formula f = parse_formula("exists x. exists y in N[1](x). E(x,y)", Signature::graph());
    GnfOptions opts;
    StageResult s1 = exloc_to_almost_basic(f, opts);
    check_differential(f, s1.formula, enumerate_graphs(5));
}

TEST_CASE("stage 1 respects the caps") {
    Formula f = parse_formula("exists x. exists y. exists z. dist>(x,y,2)", Signature::graph());
    GnfOptions opts;  // k_cap = 2
    CHECK_THROWS(exloc_to_almost_basic(f, opts));
}

TEST_CASE("stage 2 passes through an already-factored matrix") {
    Formula f = parse_formula("exists x1. exists x2. dist>(x1,x2,2) & G(x1) & B(x2)", kTwo);
    GnfOptions opts;
    StageResult s2 = almost_to_asymmetric(f, opts);
    CHECK(s2.formula == f);
}

TEST_CASE("stage 2 splits the same-colour sentence") {
    // "two disjoint neighbourhoods of the same colour".
    Formula f = parse_formula(
        "exists x1. exists x2. dist>(x1,x2,6) & (G(x1) & G(x2) | B(x1) & B(x2))", kTwo);
    auto cls = classify(f);
    REQUIRE(cls.cls == SentenceClass::AlmostBasicLocal);
    GnfOptions opts;
    StageResult s2 = almost_to_asymmetric(f, opts);
    REQUIRE(s2.formula.kind() == FKind::Or);
    CHECK(s2.formula.children().size() == 2);
    for (const auto& c : s2.formula.children()) {
        auto dc = classify(Formula(c));
        CHECK(dc.cls <= SentenceClass::AsymmetricBasicLocal);
    }
    check_differential(f, s2.formula, two_color_corpus(6));
}

TEST_CASE("stage 2 handles guarded matrices from stage 1") {
    Formula f = parse_formula("exists x. exists y. dist>(x,y,2)", Signature::graph());
    GnfOptions opts;
    StageResult s1 = exloc_to_almost_basic(f, opts);
    std::vector<Structure> corpus = enumerate_graphs(5);
    for (int n = 3; n <= 12; ++n) corpus.push_back(gen_path(n));
    REQUIRE(s1.formula.kind() == FKind::Or);
    for (const auto& c : s1.formula.children()) {
        Formula d(c);
        StageResult s2 = almost_to_asymmetric(d, opts);
        check_differential(d, s2.formula, corpus);
        std::vector<Formula> asyms;
        if (s2.formula.kind() == FKind::Or)
            for (const auto& cc : s2.formula.children()) asyms.emplace_back(cc);
        else
            asyms.push_back(s2.formula);
        for (const Formula& sub : asyms)
            CHECK(classify(sub).cls <= SentenceClass::AsymmetricBasicLocal);
    }
}

TEST_CASE("stage 3 on the green/blue asymmetric sentence") {
    Formula f = parse_formula("exists x1. exists x2. dist>(x1,x2,2) & G(x1) & B(x2)", kTwo);
    std::vector<Structure> corpus = two_color_corpus(6);
    GnfOptions opts;
    opts.probe = corpus;
    opts.skip_caps = true;
    StageResult s3 = asymmetric_to_basic(f, opts);
    CHECK(classify(s3.formula).cls == SentenceClass::PositiveBasicLocalCombination);
    check_differential(f, s3.formula, corpus);
}

TEST_CASE("stage 3 refuses without a probe and over the caps") {
    Formula f = parse_formula("exists x1. exists x2. dist>(x1,x2,2) & G(x1) & B(x2)", kTwo);
    GnfOptions opts;
    opts.skip_caps = true;
    CHECK_THROWS(asymmetric_to_basic(f, opts));
    GnfOptions capped;
    capped.probe = two_color_corpus(3);
    capped.r_cap = 1;  // input r is 1; push k over the cap instead
    capped.k_cap = 1;
    CHECK_THROWS(asymmetric_to_basic(f, capped));
}

TEST_CASE("full pipeline on the far-pair sentence over paths and cycles") {
    Formula f = parse_formula("exists x. exists y. dist>(x,y,2)", Signature::graph());
    // The sentence is already basic local, so the pipeline returns it
    // unchanged; force the stages instead to exercise the composition.
    GnfOptions opts;
    StageResult whole = positive_gaifman(f, opts);
    CHECK(whole.formula == f);

    std::vector<Structure> corpus = enumerate_graphs(4);
    for (int n = 3; n <= 10; ++n) corpus.push_back(gen_path(n));
    for (int n = 3; n <= 10; ++n) corpus.push_back(gen_cycle(n));
    opts.probe = corpus;
    opts.skip_caps = true;
    StageResult s1 = exloc_to_almost_basic(f, opts);
    std::vector<Formula> basics;
    REQUIRE(s1.formula.kind() == FKind::Or);
    for (const auto& c : s1.formula.children()) {
        StageResult s2 = almost_to_asymmetric(Formula(c), opts);
        std::vector<Formula> asyms;
        if (s2.formula.kind() == FKind::Or)
            for (const auto& cc : s2.formula.children()) asyms.emplace_back(cc);
        else
            asyms.push_back(s2.formula);
        for (const Formula& sub : asyms) basics.push_back(asymmetric_to_basic(sub, opts).formula);
    }
    Formula combined = f_or(std::move(basics));
    check_differential(f, combined, corpus);
    CHECK(classify(combined).cls == SentenceClass::PositiveBasicLocalCombination);
}

TEST_CASE("pipeline entry checks") {
    GnfOptions opts;
    CHECK_THROWS(positive_gaifman(parse_formula("forall x. !E(x,x)", Signature::graph()), opts));
    // A genuinely existential-local sentence over the radius cap.
    Formula big = parse_formula(
        "exists x. exists y. forall z in N[4](x,y). (E(x,z) -> E(y,z)) & (E(y,z) -> E(x,z))",
        Signature::graph());
    CHECK_THROWS(positive_gaifman(big, opts));  // r = 4 over the default cap
}
