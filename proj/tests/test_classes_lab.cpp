#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gaifman/covers.hpp"
#include "gaifman/enumerate.hpp"
#include "gaifman/eval.hpp"
#include "gaifman/families.hpp"
#include "gaifman/minimal.hpp"
#include "gaifman/ord.hpp"
#include "gaifman/structure.hpp"
#include "gaifman/witness.hpp"

using namespace gaifman;

TEST_CASE("basic generators") {
    CHECK(gen_path(1).domain_size() == 1);
    CHECK(gen_path(1).tuples(0).empty());
    CHECK(isomorphic(gen_cycle(3), gen_clique(3)).has_value());
    CHECK(distance(gen_path(5), 0, 4) == 4);
    CHECK_THROWS(gen_path(0));
    CHECK_THROWS(gen_cycle(2));
}

TEST_CASE("diamond: vertex count and short local balls") {
    for (int n = 3; n <= 6; ++n) {
        Structure d = gen_diamond(n);
        CHECK(d.domain_size() == n + 2 + 2 * n * (n - 1));
    }
    // td of every 1-ball stays <= 4 while the family grows.
    for (int n = 3; n <= 6; ++n) {
        Structure d = gen_diamond(n);
        int worst = 0;
        for (int v = 0; v < d.domain_size(); ++v) {
            Neighborhood nb = neighborhood(d, {v}, 1);
            worst = std::max(worst, tree_depth(gaifman_graph(nb.structure)));
        }
        CAPTURE(n);
        CHECK(worst <= 4);
        // Each 1-ball is a union of stars/short paths: at most one vertex of
        // degree above 2.
        for (int v = 0; v < d.domain_size(); ++v) {
            Graph g = gaifman_graph(neighborhood(d, {v}, 1).structure);
            int busy = 0;
            for (int u = 0; u < g.vertex_count(); ++u)
                if (g.neighbors(u).size() > 2) ++busy;
            CHECK(busy <= 1);
        }
    }
    // The global tree-depth outgrows the local bound: D_8 contains a path of
    // length 2n through an apex, and td(P_m) = floor(log2 m) + 1.
    Structure d8 = gen_diamond(8);
    int path_vertices = 2 * 8 + 1;
    int td_lower = 0;
    while ((1 << td_lower) <= path_vertices) ++td_lower;  // floor(log2)+1
    CHECK(td_lower == 5);
    CHECK(td_lower > 4);
}

TEST_CASE("pointed graphs: wheels and stars") {
    Structure w5 = gen_pointed(gen_cycle(5));
    CHECK(w5.domain_size() == 6);
    Graph g = gaifman_graph(w5);
    CHECK(g.neighbors(5).size() == 5);
    Structure star = gen_pointed(Structure(Signature::graph(), 4));
    CHECK(star.tuples(0).size() == 8);  // 4 symmetric spokes
    CHECK_THROWS(gen_pointed(gen_clique(4)));
}

TEST_CASE("wheels form an induced-substructure antichain, cliques do not") {
    std::vector<Structure> wheels;
    for (int n = 4; n <= 6; ++n) wheels.push_back(gen_pointed(gen_cycle(n)));
    for (std::size_t i = 0; i < wheels.size(); ++i)
        for (std::size_t j = 0; j < wheels.size(); ++j) {
            if (i == j) continue;
            CAPTURE(i);
            CAPTURE(j);
            CHECK(!find_induced_embedding(wheels[i], wheels[j]).has_value());
        }
    // Empirical antichain report for cliques: none found up to size 5
    // (every pair is comparable); nothing stronger is asserted.
    for (int m = 1; m <= 5; ++m)
        for (int n = m; n <= 5; ++n)
            CHECK(find_induced_embedding(gen_clique(m), gen_clique(n)).has_value());
}

TEST_CASE("gen_ord shape: the figure structure O_2+O_3+O_4+O_5") {
    Structure s = gen_ord(2, 5);
    auto chains = gen_ord_chains(2, 5);
    CHECK(s.domain_size() == 14);
    REQUIRE(chains.size() == 4);
    // Within-chain successor and reflexive order.
    CHECK(s.has("S", {0, 1}));
    CHECK(s.has("leq", {0, 0}));
    CHECK(s.has("leq", {0, 1}));
    CHECK(!s.has("leq", {1, 0}));
    // Cross links chain i -> i+1.
    CHECK(s.has("S", {1, 2}));       // last of O_2 to first of O_3
    CHECK(!s.has("leq", {1, 2}));
    // E between consecutive chains follows b <= a on 1-based positions:
    // count is i(i+1)/2, matching the figure (3, 6, 10 edges).
    int expected[] = {3, 6, 10};
    for (std::size_t c = 0; c + 1 < chains.size(); ++c) {
        int count = 0;
        for (const Tuple& t : s.tuples(s.signature().index_of("E"))) {
            if (std::find(chains[c].begin(), chains[c].end(), t[0]) != chains[c].end()) ++count;
        }
        CHECK(count == expected[c]);
    }
    // Spot-check the smallest block: E(first of O_2, first of O_3) and
    // E(second of O_2, first two of O_3) and nothing else.
    CHECK(s.has("E", {0, 2}));
    CHECK(s.has("E", {1, 2}));
    CHECK(s.has("E", {1, 3}));
    CHECK(!s.has("E", {0, 3}));
    CHECK(!s.has("E", {1, 4}));
}

TEST_CASE("gen_ord edge cases") {
    Structure s = gen_ord(2, 2);
    CHECK(s.domain_size() == 2);
    CHECK(s.tuples(s.signature().index_of("E")).empty());
    CHECK(connected_components(s).size() == 1);
    CHECK_THROWS(gen_ord(1, 3));
    CHECK_THROWS(gen_ord(4, 3));
}

TEST_CASE("gen_ord models all twelve axioms") {
    for (int m = 2; m <= 6; ++m)
        for (int n = m; n <= 6; ++n) {
            AxiomReport rep = check_axioms(gen_ord(m, n));
            CAPTURE(m);
            CAPTURE(n);
            for (const auto& [name, ok] : rep.verdicts) {
                CAPTURE(name);
                CHECK(ok);
            }
            REQUIRE(rep.all_pass);
            REQUIRE(rep.decomposed);
            REQUIRE(rep.intervals.size() == 1);
            CHECK(rep.intervals[0] == std::pair<int, int>{m, n});
        }
}

TEST_CASE("axioms pass on disjoint unions of chained orders") {
    Structure s = disjoint_union(gen_ord(2, 3), gen_ord(5, 6));
    AxiomReport rep = check_axioms(s);
    REQUIRE(rep.all_pass);
    REQUIRE(rep.decomposed);
    REQUIRE(rep.intervals.size() == 2);
    CHECK(rep.intervals[0] == std::pair<int, int>{2, 3});
    CHECK(rep.intervals[1] == std::pair<int, int>{5, 6});
}

TEST_CASE("single-mutation perturbations each violate an axiom") {
    // Twelve deterministic mutations of gen_ord structures; violated axiom
    // sets frozen from evaluating all twelve axioms on the mutants.
    struct Mutation {
        const char* description;
        Structure structure;
        std::vector<std::string> expected_violations;
    };
    auto base = [] { return gen_ord(2, 3); };
    std::vector<Mutation> mutations;

    {
        Structure s = base();  // drop a reflexive leq loop
        Structure t(s.signature(), s.domain_size());
        for (int r = 0; r < 3; ++r)
            for (const Tuple& tu : s.tuples(r))
                if (!(r == s.signature().index_of("leq") && tu == Tuple{0, 0})) t.add(r, tu);
        mutations.push_back({"drop leq(0,0)", t, {"i"}});
    }
    {
        Structure s = base();
        s.add("leq", {1, 0});  // break antisymmetry
        mutations.push_back({"add leq(1,0)", s, {"i", "iv", "v"}});
    }
    {
        Structure s = base();
        s.add("leq", {1, 2});  // cross-chain leq without transitive closure
        mutations.push_back({"add leq(1,2)", s, {"i", "vi", "vii", "viii", "ix"}});
    }
    {
        Structure s = base();  // remove the in-chain successor S(2,3)
        Structure t(s.signature(), s.domain_size());
        for (int r = 0; r < 3; ++r)
            for (const Tuple& tu : s.tuples(r))
                if (!(r == s.signature().index_of("S") && tu == Tuple{2, 3})) t.add(r, tu);
        mutations.push_back({"drop S(2,3)", t, {"v", "xi"}});
    }
    {
        Structure s = base();
        s.add("S", {0, 0});  // S fixed point
        mutations.push_back({"add S(0,0)", s, {"iii", "iv", "ix"}});
    }
    {
        Structure s = base();
        s.add("S", {0, 2});  // S branches
        mutations.push_back({"add S(0,2)", s, {"iii"}});
    }
    {
        Structure s = base();
        s.add("S", {3, 1});  // backwards cross link, S no longer injective
        mutations.push_back({"add S(3,1)", s, {"iii", "xii"}});
    }
    {
        Structure s = base();  // drop E(1,2): pre-images no longer a suffix
        Structure t(s.signature(), s.domain_size());
        for (int r = 0; r < 3; ++r)
            for (const Tuple& tu : s.tuples(r))
                if (!(r == s.signature().index_of("E") && tu == Tuple{1, 2})) t.add(r, tu);
        mutations.push_back({"drop E(1,2)", t, {"vii", "viii", "xii"}});
    }
    {
        Structure s = base();
        s.add("E", {0, 3});  // images no longer a prefix
        mutations.push_back({"add E(0,3)", s, {"ix", "x"}});
    }
    {
        Structure s = base();
        s.add("E", {0, 4});  // E onto the last element of the next chain
        mutations.push_back({"add E(0,4)", s, {"vii", "viii", "xi"}});
    }
    {
        Structure s = base();
        s.add("E", {0, 1});  // E within a chain
        mutations.push_back({"add E(0,1)", s, {"vi", "vii", "viii", "xi"}});
    }
    {
        Structure s = base();  // drop E(0,2): minimum loses its image
        Structure t(s.signature(), s.domain_size());
        for (int r = 0; r < 3; ++r)
            for (const Tuple& tu : s.tuples(r))
                if (!(r == s.signature().index_of("E") && tu == Tuple{0, 2})) t.add(r, tu);
        mutations.push_back({"drop E(0,2)", t, {"x", "xii"}});
    }

    REQUIRE(mutations.size() == 12);
    for (const auto& m : mutations) {
        AxiomReport rep = check_axioms(m.structure);
        std::vector<std::string> violated;
        for (const auto& [name, ok] : rep.verdicts)
            if (!ok) violated.push_back(name);
        CAPTURE(m.description);
        CHECK(!rep.all_pass);
        CHECK(violated == m.expected_violations);
    }
}

TEST_CASE("equal-size chains cannot pass the axioms") {
    // O_2 + O_2 glued the gen_ord way: the last element of the second chain
    // is E-reachable, violating (xi).
    Structure s(Signature::ord(), 4);
    for (int c : {0, 2}) {
        s.add("leq", {c, c});
        s.add("leq", {c + 1, c + 1});
        s.add("leq", {c, c + 1});
        s.add("S", {c, c + 1});
    }
    s.add("S", {1, 2});
    s.add("E", {0, 2});
    s.add("E", {1, 2});
    s.add("E", {1, 3});
    AxiomReport rep = check_axioms(s);
    CHECK(!rep.all_pass);
    bool xi_failed = false;
    for (const auto& [name, ok] : rep.verdicts)
        if (name == "xi") xi_failed = !ok;
    CHECK(xi_failed);
}

TEST_CASE("axiom survivors among perturbed unions decompose into gen_ord members") {
    // An enumerated set: gen_ord members and unions (<= 8 elements) plus all
    // single-tuple mutations of gen_ord(2,3); every structure passing all
    // twelve axioms must decompose, and the recovered intervals rebuild it.
    std::vector<Structure> pool;
    pool.push_back(gen_ord(2, 2));
    pool.push_back(gen_ord(2, 3));
    pool.push_back(gen_ord(3, 3));
    pool.push_back(gen_ord(3, 4));
    pool.push_back(gen_ord(4, 4));
    pool.push_back(disjoint_union(gen_ord(2, 2), gen_ord(2, 3)));
    pool.push_back(disjoint_union(gen_ord(2, 2), gen_ord(2, 2)));
    pool.push_back(disjoint_union(gen_ord(2, 3), gen_ord(3, 3)));

    Structure base = gen_ord(2, 3);
    // All single-tuple additions and removals over the three relations.
    for (int r = 0; r < 3; ++r) {
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) {
                Tuple t{a, b};
                if (!base.has(r, t)) {
                    Structure s = base;
                    s.add(r, t);
                    pool.push_back(std::move(s));
                }
            }
        for (const Tuple& t : base.tuples(r)) {
            Structure s(base.signature(), base.domain_size());
            for (int r2 = 0; r2 < 3; ++r2)
                for (const Tuple& t2 : base.tuples(r2))
                    if (!(r2 == r && t2 == t)) s.add(r2, t2);
            pool.push_back(std::move(s));
        }
    }

    int survivors = 0;
    for (const Structure& s : pool) {
        AxiomReport rep = check_axioms(s);
        if (!rep.all_pass) continue;
        ++survivors;
        REQUIRE(rep.decomposed);
        // Rebuild from the intervals and compare up to isomorphism.
        Structure rebuilt(Signature::ord(), 0);
        for (auto [m, n] : rep.intervals) rebuilt = disjoint_union(rebuilt, gen_ord(m, n));
        CHECK(isomorphic(rebuilt, s).has_value());
    }
    CHECK(survivors >= 8);  // at least the unmutated pool entries
}

TEST_CASE("phi_cc for paths") {
    Formula cc = phi_cc_paths();
    CHECK(!eval_sentence(gen_path(5), cc));
    CHECK(eval_sentence(disjoint_union(gen_path(2), gen_path(3)), cc));
    CHECK(eval_sentence(disjoint_union(gen_path(1), gen_path(1)), cc));
    CHECK(eval_sentence(disjoint_union(gen_path(1), gen_path(2)), cc));
    CHECK(!eval_sentence(gen_path(1), cc));
}

TEST_CASE("phi_cc for chained orders") {
    Formula cc = phi_cc_ord();
    CHECK(!eval_sentence(gen_ord(2, 4), cc));
    CHECK(eval_sentence(disjoint_union(gen_ord(2, 2), gen_ord(3, 3)), cc));
}

TEST_CASE("phi_b holds on unmarked structures") {
    Formula f = phi_b(phi_cc_paths());
    Structure p4 = gen_path(4);
    Structure path(Signature({{"E", 2}, {"B", 1}}), 4);
    for (const Tuple& t : p4.tuples(0)) path.add(0, t);
    CHECK(eval_sentence(path, f));
    Structure marked = path;
    marked.add("B", {1});
    CHECK(!eval_sentence(marked, f));
}

TEST_CASE("counterexample witness over paths") {
    Signature sig({{"E", 2}, {"B", 1}});
    // A 1-variable, radius-0 sentence: any point with no B.
    Formula psi = parse_formula("exists x. !B(x)", sig);
    WitnessReport rep = counterexample_witness(psi, WitnessFamily::Paths);
    CHECK(rep.base.domain_size() == 2);  // k(2r+1)+1 with k=1, r=0
    REQUIRE(rep.base_satisfies_psi);
    REQUIRE(rep.flipped.has_value());
    CHECK(rep.flipped_satisfies_psi);
    CHECK(!rep.flipped_satisfies_phi_b);
    CHECK(rep.verdict == "counterexample");
}

TEST_CASE("counterexample witness: the already-disagreeing branch") {
    Signature sig({{"E", 2}, {"B", 1}});
    // Two isolated points never exist in a connected path.
    Formula psi = parse_formula(
        "exists x1. exists x2. x1 != x2 & (forall y in N[1](x1). y = x1) & "
        "(forall y in N[1](x2). y = x2)",
        sig);
    WitnessReport rep = counterexample_witness(psi, WitnessFamily::Paths);
    CHECK(!rep.base_satisfies_psi);
    CHECK(rep.verdict == "psi already disagrees with phi_B on A");
}

TEST_CASE("counterexample witness over chained orders") {
    Signature sig = Signature::ord_b();
    Formula psi = parse_formula("exists x. exists y in N[1](x). S(x,y) & !B(x)", sig);
    WitnessReport rep = counterexample_witness(psi, WitnessFamily::Ord);
    REQUIRE(rep.base_satisfies_psi);
    REQUIRE(rep.flipped.has_value());
    CHECK(rep.flipped_satisfies_psi);
    CHECK(!rep.flipped_satisfies_phi_b);
}

TEST_CASE("minimal models") {
    auto corpus_structs = enumerate_graphs(4);
    Formula somepoint = parse_formula("exists x. x = x", Signature::graph());
    auto mins = minimal_models(somepoint, corpus_structs);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].domain_size() == 1);

    // phi_cc over a union-closed path corpus: minimal models are the
    // smallest two-component structures.
    std::vector<Structure> paths;
    for (int n = 1; n <= 4; ++n) paths.push_back(gen_path(n));
    std::vector<Structure> closed = paths;
    for (const auto& a : paths)
        for (const auto& b : paths) closed.push_back(disjoint_union(a, b));
    auto cc_mins = minimal_models(phi_cc_paths(), closed);
    REQUIRE(cc_mins.size() == 1);
    CHECK(cc_mins[0].domain_size() == 2);
    CHECK(cc_mins[0].tuples(0).empty());
}

TEST_CASE("minimal models of an extension-preserved sentence sit in small balls") {
    // "some vertex has two distinct neighbors" is preserved under extensions;
    // its minimal models live among the 1-balls around single points.
    Formula branching = parse_formula(
        "exists x. exists y in N[1](x). exists z in N[1](x). E(x,y) & E(x,z) & y != z",
        Signature::graph());
    auto corpus_structs = enumerate_graphs(4);
    auto mins = minimal_models(branching, corpus_structs);
    auto balls = balls_of_class(corpus_structs, 1, 1);
    for (const auto& m : mins) {
        bool found = false;
        for (const auto& b : balls)
            if (isomorphic(m, b).has_value()) found = true;
        CHECK(found);
    }
}

TEST_CASE("tree-depth localisation on diamond balls") {
    // Multi-ball bound: td(N_r(a,b)) <= rho(r(2k+1)) with rho read off the
    // single-ball family empirically (D_3 keeps the 3-balls within the
    // tree-depth cap; D_4's 3-balls reach 20 vertices).
    int r = 1, k = 2;
    TreeDepthOptions opts;
    opts.vertex_cap = 20;
    int rho = 0;
    Structure d3 = gen_diamond(3);
    for (int v = 0; v < d3.domain_size(); ++v) {
        Structure ball = neighborhood(d3, {v}, r * (2 * k + 1)).structure;
        rho = std::max(rho, tree_depth(gaifman_graph(ball), opts));
    }
    CHECK(rho >= 3);
    std::mt19937 rng(7);
    for (const Structure& d : {gen_diamond(3), gen_diamond(4)}) {
        std::uniform_int_distribution<int> elem(0, d.domain_size() - 1);
        for (int trial = 0; trial < 12; ++trial) {
            Tuple t{elem(rng), elem(rng)};
            Structure ball = neighborhood(d, t, r).structure;
            CHECK(tree_depth(gaifman_graph(ball), opts) <= rho);
        }
    }
}
