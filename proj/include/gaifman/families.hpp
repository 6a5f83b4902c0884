#ifndef GAIFMAN_FAMILIES_HPP
#define GAIFMAN_FAMILIES_HPP

#include "gaifman/formula.hpp"
#include "gaifman/structure.hpp"

namespace gaifman {

// Graphs over {E/2}, undirected encoded as symmetric pairs.
Structure gen_path(int n);
Structure gen_cycle(int n);
Structure gen_clique(int n);

// Cycle of length n plus two apexes, each joined to every cycle node by a
// fresh path of length n.
Structure gen_diamond(int n);

// One apex adjacent to every element; input must have Gaifman degree <= 2.
Structure gen_pointed(const Structure& s);

// The chained orders O_m + ... + O_n over {leq/2, S/2, E/2}:
// per chain, leq is the reflexive total order and S the successor; the last
// element of O_i links by S to the first of O_{i+1}; E(a,b) for a in O_i,
// b in O_{i+1} with b <= a as integers.
Structure gen_ord(int m, int n);

// gen_ord over the B-extended signature, all elements unmarked.
Structure gen_ord_b(int m, int n);

// Add an empty B table to a {leq,S,E}-structure / forget B again.
Structure with_b_predicate(const Structure& s);
Structure ord_reduct(const Structure& s);

// Chain layout bookkeeping for gen_ord: element ids of chain i (0-based
// chain index, sizes m..n), in increasing order.
std::vector<std::vector<int>> gen_ord_chains(int m, int n);

}  // namespace gaifman

#endif
