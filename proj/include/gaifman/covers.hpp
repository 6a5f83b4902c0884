#ifndef GAIFMAN_COVERS_HPP
#define GAIFMAN_COVERS_HPP

#include <optional>
#include <string>

#include "gaifman/local_type.hpp"
#include "gaifman/structure.hpp"

namespace gaifman {

struct CoverResult {
    Tuple centers;
    int radius = 0;
    std::vector<std::string> trace;  // merge steps, for provenance
};

// Shrink ā into centers b̄ with N_r(ā) ⊆ N_R(b̄), r <= R <= 4^|ā| r and the
// 3R-balls around distinct centers pairwise disjoint. Deterministic: first
// intersecting pair in lexicographic order, least witness element.
CoverResult extended_cover(const Structure& s, const Tuple& anchors, int r);

// m elements with pairwise disjoint r-balls (pairwise distance > 2r), or
// nullopt; depth-first search in increasing element order.
std::optional<std::vector<int>> scattered_set(const Structure& s, int r, int m);

// `count` centers whose radius-`radius` balls cover the whole domain, or
// nullopt. Used to check the no-scattered-set consequence.
std::optional<std::vector<int>> ball_cover_centers(const Structure& s, int radius, int count);

// All r-neighborhoods around tuples of <= k points across the corpus,
// deduplicated up to isomorphism, in first-encountered order.
std::vector<Structure> balls_of_class(const std::vector<Structure>& corpus, int r, int k);

enum class TypeOracle { FO, MSO };

struct TypeCoverResult {
    int radius = 0;                  // R with r <= R <= R_m
    int k_budget = 0;                // K_m (instance-relative)
    int radius_budget = 0;           // R_m (instance-relative)
    std::vector<int> rare_centers;   // C
    std::vector<int> frequent_reps;  // G
    // Per element: true when its type is R-covered by C, false when frequent.
    std::vector<bool> covered;
    std::map<std::string, std::vector<int>> frequent_witnesses;  // type digest -> k reps in G
};

// The iterative rare/frequent dichotomy for 1-variable (q,r)-types.
TypeCoverResult type_cover(const Structure& s, int r, int q, int k, TypeOracle oracle,
                           const LocalTypeOptions& opts = {});

struct WidenessEntry {
    std::string name;
    int size = 0;
    bool has_scattered = false;
};

struct WidenessReport {
    int r = 0, m = 0;
    std::vector<WidenessEntry> entries;
    // Largest structure lacking an (r,m)-scattered set; -1 when all have one.
    int rho = -1;
    bool all_large_have_scattered = true;
};

WidenessReport wideness_probe(const std::vector<std::pair<std::string, Structure>>& corpus, int r,
                              int m);

}  // namespace gaifman

#endif
