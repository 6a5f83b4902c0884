#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "gaifman/enumerate.hpp"
#include "gaifman/families.hpp"
#include "gaifman/structure.hpp"
#include "gaifman/structure_io.hpp"

using namespace gaifman;

TEST_CASE("gaifman graph of empty tables is edgeless") {
    Structure s(Signature::graph(), 4);
    Graph g = gaifman_graph(s);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("gaifman graph of P_3 is the path") {
    Structure s = gen_path(3);
    Graph g = gaifman_graph(s);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
    CHECK(!g.adjacent(0, 2));
    CHECK(g.edge_count() == 2);
}

TEST_CASE("ternary tuples induce pairwise gaifman edges") {
    Structure s(Signature({{"R", 3}}), 3);
    s.add(0, {0, 1, 2});
    Graph g = gaifman_graph(s);
    CHECK(g.edge_count() == 3);
}

TEST_CASE("distance basics") {
    Structure p5 = gen_path(5);
    CHECK(distance(p5, 2, 2) == 0);
    CHECK(distance(p5, 0, 4) == 4);
    Structure two = disjoint_union(gen_path(2), gen_path(2));
    CHECK(distance(two, 0, 2) == kUnreachable);
    CHECK_THROWS(distance(p5, 0, 17));
}

TEST_CASE("neighborhood at radius 0 is the anchor set") {
    Structure p5 = gen_path(5);
    Neighborhood nb = neighborhood(p5, {2}, 0);
    CHECK(nb.structure.domain_size() == 1);
    CHECK(nb.structure.tuples(0).empty());
    Neighborhood dup = neighborhood(p5, {2, 2, 4}, 0);
    CHECK(dup.structure.domain_size() == 2);
}

TEST_CASE("neighborhood of the middle of P_5 at radius 1 is P_3") {
    Structure p5 = gen_path(5);
    Neighborhood nb = neighborhood(p5, {2}, 1);
    REQUIRE(isomorphic(nb.structure, gen_path(3)).has_value());
    CHECK(nb.map_tuple({2}) == Tuple{1});
}

TEST_CASE("neighborhood saturates at the component diameter") {
    Structure p5 = gen_path(5);
    Neighborhood nb = neighborhood(p5, {0}, 10);
    CHECK(nb.structure.domain_size() == 5);
}

TEST_CASE("neighborhood is the union of its single-anchor balls") {
    Structure s = disjoint_union(gen_cycle(5), gen_path(4));
    for (int r = 0; r <= 2; ++r) {
        Tuple anchors{1, 6, 8};
        auto joint = neighborhood(s, anchors, r).old_of_new;
        std::vector<int> merged;
        for (int a : anchors) {
            auto one = neighborhood(s, {a}, r).old_of_new;
            merged.insert(merged.end(), one.begin(), one.end());
        }
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        CHECK(joint == merged);
    }
}

TEST_CASE("neighborhood monotone in the radius") {
    Structure s = disjoint_union(gen_cycle(4), gen_path(3));
    for (int r = 0; r < 3; ++r) {
        auto small = neighborhood(s, {1, 5}, r).old_of_new;
        auto big = neighborhood(s, {1, 5}, r + 1).old_of_new;
        CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
}

TEST_CASE("disjoint union adds sizes and components") {
    Structure a = gen_path(2), b = gen_path(2);
    Structure u = disjoint_union(a, b);
    CHECK(u.domain_size() == 4);
    CHECK(u.tuples(0).size() == 4);  // two symmetric edges
    CHECK(connected_components(u).size() == 2);
    Structure empty(Signature::graph(), 0);
    CHECK(disjoint_union(a, empty) == a);
    CHECK_THROWS(disjoint_union(a, Structure(Signature::two_colors(), 1)));
}

TEST_CASE("gaifman graph distributes over disjoint union") {
    Structure a = gen_cycle(3), b = gen_path(4);
    Graph g = gaifman_graph(disjoint_union(a, b));
    Graph ga = gaifman_graph(a), gb = gaifman_graph(b);
    CHECK(g.edge_count() == ga.edge_count() + gb.edge_count());
    for (int v = 0; v < a.domain_size(); ++v)
        for (int w : g.neighbors(v)) CHECK(w < a.domain_size());
}

TEST_CASE("induced embedding: identity, P_3 into C_4, empty source") {
    Structure p3 = gen_path(3);
    auto self = find_induced_embedding(p3, p3);
    REQUIRE(self.has_value());
    CHECK(*self == std::vector<int>{0, 1, 2});

    // Golden verdict from the exhaustive search: vertices {0,1,2} of C_4
    // induce a 2-edge path, so the embedding exists.
    auto into_c4 = find_induced_embedding(p3, gen_cycle(4));
    REQUIRE(into_c4.has_value());
    CHECK(*into_c4 == std::vector<int>{0, 1, 2});

    Structure empty(Signature::graph(), 0);
    auto trivial = find_induced_embedding(empty, p3);
    REQUIRE(trivial.has_value());
    CHECK(trivial->empty());

    CHECK(!find_induced_embedding(gen_clique(3), gen_cycle(4)).has_value());
}

TEST_CASE("induced embedding is transitive on small triples") {
    auto corpus = enumerate_graphs(3);
    for (const auto& a : corpus)
        for (const auto& b : corpus)
            for (const auto& c : corpus) {
                if (find_induced_embedding(a, b) && find_induced_embedding(b, c))
                    CHECK(find_induced_embedding(a, c).has_value());
            }
}

TEST_CASE("isomorphism: relabeling found, P_3 vs K_3 and C_6 vs P_6 rejected") {
    Structure p3 = gen_path(3);
    Structure relabeled(Signature::graph(), 3);
    relabeled.add(0, {2, 0});
    relabeled.add(0, {0, 2});
    relabeled.add(0, {0, 1});
    relabeled.add(0, {1, 0});
    CHECK(isomorphic(p3, relabeled).has_value());
    CHECK(!isomorphic(p3, gen_clique(3)).has_value());
    CHECK(!isomorphic(gen_cycle(6), gen_path(6)).has_value());
}

TEST_CASE("connected components") {
    CHECK(connected_components(gen_cycle(5)).size() == 1);
    CHECK(connected_components(Structure(Signature::graph(), 0)).empty());
}

TEST_CASE("tree depth: known values") {
    Graph single(1);
    CHECK(tree_depth(single) == 1);
    for (int n = 2; n <= 6; ++n) CHECK(tree_depth(gaifman_graph(gen_clique(n))) == n);
    CHECK(tree_depth(gaifman_graph(gen_path(7))) == 3);
    CHECK(tree_depth(Graph(0)) == 0);
    TreeDepthOptions tiny;
    tiny.vertex_cap = 3;
    CHECK_THROWS(tree_depth(gaifman_graph(gen_path(5)), tiny));
}

TEST_CASE("tree depth of a union is the max over parts") {
    Graph g = gaifman_graph(disjoint_union(gen_clique(4), gen_path(6)));
    CHECK(tree_depth(g) == 4);
}

TEST_CASE("structure text format round trip and errors") {
    std::string text =
        "signature: E/2 B/1\n"
        "domain: 5\n"
        "E: (0,1) (1,2) (2,3) (3,4)\n"
        "B: (2)\n";
    Structure s = parse_structure(text);
    CHECK(s.domain_size() == 5);
    CHECK(s.has("E", {0, 1}));
    CHECK(s.has("B", {2}));
    CHECK(!s.has("E", {1, 0}));
    Structure again = parse_structure(print_structure(s));
    CHECK(again == s);

    CHECK_THROWS_AS(parse_structure("signature: E/2\ndomain: 2\nE: (0,1,2)\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("signature: E/2\ndomain: 2\nE: (0,7)\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("signature: E/2\ndomain: 2\nF: (0,1)\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("domain: 2\n"), ParseError);
}

TEST_CASE("enumeration counts match the Burnside oracle") {
    Signature e2 = Signature::graph();
    auto all = enumerate_structures(e2, 3);
    std::map<int, std::uint64_t> by_size;
    for (const auto& s : all) ++by_size[s.domain_size()];
    // Golden counts (binary relations up to iso on 0..3 points),
    // cross-checked against the Burnside oracle below.
    CHECK(by_size[0] == 1);
    CHECK(by_size[1] == 2);
    CHECK(by_size[2] == 10);
    CHECK(by_size[3] == 104);
    for (int n = 0; n <= 3; ++n) CHECK(by_size[n] == count_structures_burnside(e2, n));

    auto graphs = enumerate_graphs(5);
    std::map<int, std::uint64_t> gcount;
    for (const auto& s : graphs) ++gcount[s.domain_size()];
    CHECK(gcount[2] == 2);
    CHECK(gcount[3] == 4);
    CHECK(gcount[4] == 11);
    CHECK(gcount[5] == 34);
    for (int n = 0; n <= 5; ++n)
        CHECK(gcount[n] == count_structures_burnside(e2, n, /*graph_mode=*/true));
}

TEST_CASE("enumeration is monotone in max size") {
    auto small = enumerate_graphs(3);
    auto large = enumerate_graphs(4);
    CHECK(small.size() < large.size());
    for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == large[i]);
}
