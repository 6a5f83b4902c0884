#ifndef GAIFMAN_TEMPLATE_GRAPH_HPP
#define GAIFMAN_TEMPLATE_GRAPH_HPP

#include <cstdint>
#include <map>

#include "gaifman/eval.hpp"
#include "gaifman/formula.hpp"
#include "gaifman/structure.hpp"

namespace gaifman {

// Colored, distance-labeled abstraction of a point configuration: vertices
// 0..n-1, an edge (u,v,h) exactly when the realized Gaifman distance is
// h <= R, and per-vertex color sets indexing a shared property list.
struct TemplateGraph {
    int n = 0;
    std::map<std::pair<int, int>, int> edges;  // key (u < v) -> weight >= 1
    std::vector<std::uint32_t> colors;         // bitmask per vertex

    std::string canonical_key() const;  // minimum serialization over vertex permutations
    friend bool operator==(const TemplateGraph& a, const TemplateGraph& b) {
        return a.n == b.n && a.edges == b.edges && a.colors == b.colors;
    }

    // Pairwise weighted shortest-path distances (kUnreachable when separated).
    std::vector<std::vector<int>> weighted_distances() const;
};

// G <= G2: a label-preserving isomorphism of the underlying edge-weighted
// graphs along which colors may only grow.
bool tg_leq(const TemplateGraph& g, const TemplateGraph& g2);

TemplateGraph tg_union(const TemplateGraph& a, const TemplateGraph& b);

// Template of the(deduplicated) tuple in `s` at radius R; every entry must
// satisfy at least one property of `q` (error naming the colorless point).
TemplateGraph build_template_graph(Evaluator& ev, const Tuple& points, int radius,
                                   const std::vector<Formula>& q,
                                   const std::string& q_var = "_p");

// theta_G: some tuple inside N[R](x) realizes at least G, with the r-balls of
// its points contained in N[R](x).
Formula theta_g(const TemplateGraph& g, const std::vector<Formula>& q, int big_radius,
                int small_radius, const std::string& x = "x");

// pi_Q: every property-satisfying point within 3R of x has its r-ball inside
// N[R](x). Ball containment is phrased through its first-exit witness (an
// element just past radius R reachable by a short in-ball chain), which keeps
// the formula 3R-local.
Formula pi_q(const Signature& sig, int big_radius, int small_radius,
             const std::vector<Formula>& q, const std::string& x = "x");

// Obt: graphs assembled by picking at most one member per multiset element
// and taking disjoint unions, deduplicated.
std::vector<TemplateGraph> obtainable(const std::vector<std::vector<TemplateGraph>>& multiset);

// Some obtainable graph carries vertices v_1..v_k at pairwise weighted
// distance > threshold with color bit var_colors[i] set on v_i.
bool is_valid_multiset(const std::vector<std::vector<TemplateGraph>>& multiset,
                       const std::vector<int>& var_colors, int threshold);

}  // namespace gaifman

#endif
