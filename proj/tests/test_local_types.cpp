#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gaifman/enumerate.hpp"
#include "gaifman/eval.hpp"
#include "gaifman/families.hpp"
#include "gaifman/local_type.hpp"

using namespace gaifman;

TEST_CASE("rank-0 types are atomic tuple diagrams") {
    Structure p3 = gen_path(3);
    // All three singleton tuples of P_3 share the rank-0 type: the diagram
    // only mentions the tuple entries (no loops anywhere), so the specter at
    // (r=1, q=0, k=1) has a single element.
    Specter s = specter(p3, 1, 0, 1);
    CHECK(s.size() == 1);
    // Pairs split by adjacency and equality.
    CHECK(specter(p3, 1, 0, 2).size() == 3);
}

TEST_CASE("local types are isomorphism invariant") {
    Structure p5 = gen_path(5);
    Structure relabeled(Signature::graph(), 5);
    // reverse labels
    for (const Tuple& t : p5.tuples(0)) relabeled.add(0, {4 - t[0], 4 - t[1]});
    for (int q = 0; q <= 2; ++q)
        CHECK(local_type(p5, {0, 3}, 1, q).digest() ==
              local_type(relabeled, {4, 1}, 1, q).digest());
}

TEST_CASE("path endpoint vs internal vertex across ranks") {
    Structure p9 = gen_path(9);
    // Rank 1 cannot count neighbors: endpoint and center 1-ball types agree.
    CHECK(local_type(p9, {4}, 1, 1).digest() == local_type(p9, {2}, 1, 1).digest());
    CHECK(local_type(p9, {0}, 1, 1).digest() == local_type(p9, {4}, 1, 1).digest());
    // Rank 2 separates degree 1 from degree 2.
    CHECK(local_type(p9, {4}, 1, 2).digest() == local_type(p9, {2}, 1, 2).digest());
    CHECK(local_type(p9, {0}, 1, 2).digest() != local_type(p9, {4}, 1, 2).digest());
}

TEST_CASE("cycles embed into long paths type-wise, paths do not embed into cycles") {
    // C_m below P_n whenever n >= m > k(2r+1): here (m,n,k,r) = (4,4,1,1).
    for (int q = 1; q <= 2; ++q) {
        CAPTURE(q);
        CHECK(preorder_leq(gen_cycle(4), gen_path(4), 1, q, 1));
    }
    // The endpoint type of the path needs rank 2 to be missed by the cycle.
    CHECK(preorder_leq(gen_path(4), gen_cycle(4), 1, 1, 1));
    for (int n = 3; n <= 5; ++n)
        for (int m = 3; m <= 5; ++m) {
            CAPTURE(n);
            CAPTURE(m);
            CHECK(!preorder_leq(gen_path(n), gen_cycle(m), 1, 2, 1));
        }
}

TEST_CASE("preorder is reflexive and respects disjoint-union upward closure") {
    auto corpus = enumerate_graphs(3);
    for (const auto& s : corpus) {
        if (s.domain_size() == 0) continue;
        CHECK(preorder_leq(s, s, 1, 1, 1));
        for (const auto& t : corpus) {
            Structure u = disjoint_union(s, t);
            CHECK(preorder_leq(s, u, 1, 1, 2));
        }
    }
}

TEST_CASE("k-copies collapse") {
    for (const Structure& s : {gen_path(2), gen_cycle(3), gen_path(3)}) {
        for (int k = 1; k <= 2; ++k) {
            Structure k_copies = s;
            for (int i = 1; i < k; ++i) k_copies = disjoint_union(k_copies, s);
            Structure more = k_copies;
            for (int n = 0; n < 2; ++n) {
                more = disjoint_union(more, s);
                CHECK(preorder_leq(more, k_copies, 1, 1, k));
                CHECK(preorder_leq(k_copies, more, 1, 1, k));
            }
        }
    }
}

TEST_CASE("trivial preorders: q=0, k=1 at saturating radius") {
    // Any two loop-free graphs share their only point type.
    Structure a = gen_path(4), b = gen_clique(3);
    CHECK(preorder_leq(a, b, 5, 0, 1));
    CHECK(preorder_leq(b, a, 5, 0, 1));
}

TEST_CASE("specter grows under disjoint union") {
    Structure p3 = gen_path(3), c4 = gen_cycle(4);
    Structure u = disjoint_union(p3, c4);
    for (int q = 0; q <= 2; ++q) {
        Specter sp = specter(p3, 1, q, 1);
        Specter su = specter(u, 1, q, 1);
        for (const auto& [digest, ty] : sp) CHECK(su.count(digest));
    }
}

TEST_CASE("specter cardinality bounds") {
    Structure s = gen_path(4);
    CHECK(specter(s, 1, 1, 2).size() <= 16);
    CHECK(specter(Structure(Signature::graph(), 0), 1, 1, 1).empty());
    CHECK_THROWS(specter(s, 1, 1, 0));
}

TEST_CASE("refinement is consistent on all small pairs") {
    auto corpus = enumerate_graphs(4);
    std::vector<std::tuple<int, int, int>> params;
    for (int r = 0; r <= 1; ++r)
        for (int q = 0; q <= 2; ++q)
            for (int k = 1; k <= 2; ++k) params.push_back({r, q, k});
    for (const auto& a : corpus) {
        if (a.domain_size() == 0) continue;
        for (const auto& b : corpus) {
            if (b.domain_size() == 0) continue;
            for (auto [r1, q1, k1] : params)
                for (auto [r2, q2, k2] : params) {
                    if (r1 > r2 || q1 > q2 || k1 > k2) continue;
                    auto rep = refinement_check(a, b, r1, q1, k1, r2, q2, k2);
                    CAPTURE(rep.detail);
                    CHECK(rep.consistent);
                }
        }
    }
}

TEST_CASE("disjoint union decomposition basics") {
    Structure p2 = gen_path(2), p3 = gen_path(3);
    auto self = find_disjoint_union_decomposition(p3, p3);
    REQUIRE(self.has_value());
    CHECK(self->domain_size() == 0);

    auto rest = find_disjoint_union_decomposition(p2, disjoint_union(p2, p3));
    REQUIRE(rest.has_value());
    CHECK(isomorphic(*rest, p3).has_value());

    CHECK(!find_disjoint_union_decomposition(p2, gen_path(4)).has_value());
}

TEST_CASE("decomposition characterizes the (1,1,|A|) preorder on small pairs") {
    auto corpus = enumerate_graphs(4);
    for (const auto& a : corpus) {
        if (a.domain_size() == 0) continue;
        for (const auto& b : corpus) {
            bool dec = find_disjoint_union_decomposition(a, b).has_value();
            bool leq = preorder_leq(a, b, 1, 1, a.domain_size());
            CAPTURE(a.domain_size());
            CAPTURE(b.domain_size());
            CHECK(dec == leq);
        }
    }
}

TEST_CASE("extension preorder agrees with radius-0 full-tuple types") {
    auto corpus = enumerate_graphs(3);
    for (const auto& a : corpus) {
        if (a.domain_size() == 0) continue;
        for (const auto& b : corpus)
            for (int q = 0; q <= 2; ++q) {
                CAPTURE(q);
                CHECK(extension_leq(a, b) == preorder_leq(a, b, 0, q, a.domain_size()));
            }
    }
    CHECK(extension_leq(gen_path(2), disjoint_union(gen_path(2), gen_cycle(3))));
    CHECK(!extension_leq(gen_clique(3), gen_cycle(4)));
}

TEST_CASE("MSO local types extend FO types") {
    Structure p5 = gen_path(5);
    // q = 0 induces the same equivalence as the FO rank-0 diagrams.
    for (int v = 0; v < 5; ++v)
        for (int w = 0; w < 5; ++w) {
            bool fo = local_type(p5, {v}, 1, 0).digest() == local_type(p5, {w}, 1, 0).digest();
            bool mso = mso_local_type(p5, {v}, 1, 0).digest() ==
                       mso_local_type(p5, {w}, 1, 0).digest();
            CHECK(fo == mso);
        }
    // Isomorphic pointed balls share MSO types: P_3 center vs P_5 center.
    Structure p3 = gen_path(3);
    CHECK(mso_local_type(p3, {1}, 1, 1).digest() == mso_local_type(p5, {2}, 1, 1).digest());
    // Size cap enforced.
    LocalTypeOptions opts;
    opts.mso_cap = 2;
    CHECK_THROWS(mso_local_type(p5, {2}, 1, 1, opts));
}

TEST_CASE("MSO type equality refines FO type equality") {
    auto corpus = enumerate_graphs(4);
    for (const auto& s : corpus)
        for (int v = 0; v < s.domain_size(); ++v)
            for (int w = 0; w < s.domain_size(); ++w)
                for (int q = 0; q <= 2; ++q) {
                    bool mso = mso_local_type(s, {v}, 1, q).digest() ==
                               mso_local_type(s, {w}, 1, q).digest();
                    bool fo = local_type(s, {v}, 1, q).digest() ==
                              local_type(s, {w}, 1, q).digest();
                    if (mso) CHECK(fo);
                }
    // At rank 2 the set layer counts: endpoint and internal vertices differ
    // (they already differ in FO at rank 2 as well).
    Structure p9 = gen_path(9);
    CHECK(mso_local_type(p9, {0}, 1, 2).digest() != mso_local_type(p9, {4}, 1, 2).digest());
}

TEST_CASE("characteristic formulas recognize exactly their type") {
    auto corpus = enumerate_graphs(4);
    Structure probe = gen_path(4);
    for (int q = 0; q <= 1; ++q) {
        Specter sp = specter(probe, 1, q, 1);
        for (const auto& [digest, ty] : sp) {
            Formula h = type_formula(ty, Signature::graph(), {"x"});
            for (const auto& s : corpus) {
                for (int v = 0; v < s.domain_size(); ++v) {
                    bool same = local_type(s, {v}, 1, q).digest() == digest;
                    CHECK(eval(s, h, {{"x", v}}) == same);
                }
            }
        }
    }
    // Two-variable case on a couple of structures.
    Specter pairs = specter(probe, 1, 1, 2);
    const auto& [d0, ty0] = *pairs.begin();
    Formula h2 = type_formula(ty0, Signature::graph(), {"x1", "x2"});
    for (const Structure& s : {gen_path(4), gen_cycle(5)}) {
        for (int v = 0; v < s.domain_size(); ++v)
            for (int w = 0; w < s.domain_size(); ++w) {
                bool same = local_type(s, {v, w}, 1, 1).digest() == d0;
                CHECK(eval(s, h2, {{"x1", v}, {"x2", w}}) == same);
            }
    }
}
