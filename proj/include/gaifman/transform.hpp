#ifndef GAIFMAN_TRANSFORM_HPP
#define GAIFMAN_TRANSFORM_HPP

#include <optional>

#include "gaifman/formula.hpp"

namespace gaifman {

// Guard every quantifier of `f` by N[radius](anchors) and rewrite distance
// atoms into in-ball witness chains, so that for every structure S and tuple
// ā: eval(S, relativize(f, x̄, r), x̄ ↦ ā) == eval(N_r(ā), f, x̄ ↦ ā).
Formula relativize(const Formula& f, const std::vector<std::string>& anchors, int radius,
                   const Signature& sig);

// Distance-atom- and guard-free equivalent over the ambient structure.
Formula expand_distance(const Formula& f, const Signature& sig);

// Quantifier rank with the chain-cost convention: distance atoms of radius s
// cost max(0, s-1), guarded quantifiers cost 1 + r, set quantifiers cost 1.
int quantifier_rank(const Formula& f);

// Least ball radius around `anchors` that provably determines `f`, walking
// guard depths; nullopt when f has an unguarded quantifier or a variable not
// reachable from the anchors.
std::optional<int> locality_radius(const Formula& f, const std::vector<std::string>& anchors);

// d(x,y) <= s via equal-or-adjacent steps; aux quantifiers guarded when
// guard_anchors is nonempty.
Formula distance_chain_le(const std::string& x, const std::string& y, int s, const Signature& sig,
                          const std::vector<std::string>& guard_anchors, int guard_radius,
                          int* fresh_counter);

}  // namespace gaifman

#endif
