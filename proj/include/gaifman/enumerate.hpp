#ifndef GAIFMAN_ENUMERATE_HPP
#define GAIFMAN_ENUMERATE_HPP

#include "gaifman/structure.hpp"

namespace gaifman {

struct EnumOptions {
    bool up_to_iso = true;
    // Treat every binary relation as symmetric and irreflexive (undirected
    // graph mode); unary relations enumerate freely.
    bool graph_mode = false;
    // Refuse inputs whose labeled table space exceeds 2^bit_cap per size.
    int bit_cap = 24;
};

// All structures over `sig` with domain size 0..max_size, smallest first;
// deterministic order (by size, then canonical table encoding).
std::vector<Structure> enumerate_structures(const Signature& sig, int max_size,
                                            const EnumOptions& opts = {});

// Undirected loop-free graphs over {E/2} up to isomorphism, sizes 0..max_size.
std::vector<Structure> enumerate_graphs(int max_size);

// Independent counting oracle: number of structures over `sig` with exactly
// n elements up to isomorphism, via Burnside's lemma over S_n.
std::uint64_t count_structures_burnside(const Signature& sig, int n, bool graph_mode = false);

}  // namespace gaifman

#endif
