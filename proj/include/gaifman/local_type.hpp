#ifndef GAIFMAN_LOCAL_TYPE_HPP
#define GAIFMAN_LOCAL_TYPE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "gaifman/formula.hpp"
#include "gaifman/structure.hpp"

namespace gaifman {

// Canonical back-and-forth type tree of an anchored pointed neighborhood.
// `diagram` encodes the atomic facts of the current tuple (position-based, so
// isomorphism-invariant); children are the extension types one rank down,
// deduplicated and sorted by digest. The digest is the full recursive
// serialization — exact, no hashing.
struct TypeTree {
    std::string diagram;
    std::vector<std::shared_ptr<const TypeTree>> children;      // element extensions
    std::vector<std::shared_ptr<const TypeTree>> set_children;  // MSO set extensions
    std::string digest;
};

struct LocalType {
    int r = 0, q = 0, k = 1;
    std::shared_ptr<const TypeTree> tree;
    const std::string& digest() const { return tree->digest; }

    friend bool operator==(const LocalType& a, const LocalType& b) {
        return a.r == b.r && a.q == b.q && a.k == b.k && a.tree->digest == b.tree->digest;
    }
};

struct LocalTypeOptions {
    int mso_cap = 12;
};

// (q,r)-local type of ā: rank-q type of (N_r(ā), ā) with the neighborhood
// anchored once at ā (inner witnesses do not grow the ball).
LocalType local_type(const Structure& s, const Tuple& anchors, int r, int q);

// MSO variant: extension steps also branch over all subsets of the ball.
LocalType mso_local_type(const Structure& s, const Tuple& anchors, int r, int q,
                         const LocalTypeOptions& opts = {});

// All (q,r)-local types of k-tuples (exact length, repetitions allowed),
// keyed by digest for deterministic iteration.
using Specter = std::map<std::string, LocalType>;
Specter specter(const Structure& s, int r, int q, int k);
Specter mso_specter(const Structure& s, int r, int q, int k, const LocalTypeOptions& opts = {});

bool preorder_leq(const Structure& a, const Structure& b, int r, int q, int k);

struct RefinementReport {
    bool consistent = true;
    std::string detail;  // description of the violation, if any
};

// Componentwise-larger parameters must yield a smaller relation on (a, b).
RefinementReport refinement_check(const Structure& a, const Structure& b, int r1, int q1, int k1,
                                  int r2, int q2, int k2);

// C with a ⊎ C ≅ b: an induced embedding of `a` whose image is a union of
// Gaifman components of `b`; the complement is C.
std::optional<Structure> find_disjoint_union_decomposition(const Structure& a, const Structure& b);

bool extension_leq(const Structure& a, const Structure& b);

// Hintikka-style characteristic formula H of the type: for every structure S
// and tuple ā of matching length, (S, ā) ⊨ H iff local_type(S, ā, r, q) = τ.
Formula type_formula(const LocalType& type, const Signature& sig,
                     const std::vector<std::string>& vars);

}  // namespace gaifman

#endif
