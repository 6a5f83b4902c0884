#ifndef GAIFMAN_RANDOM_GEN_HPP
#define GAIFMAN_RANDOM_GEN_HPP

#include <random>

#include "gaifman/structure.hpp"

namespace gaifman {

// Undirected degree-bounded graph over {E/2}; edges sampled in random order
// until no further edge respects the bound or the target count is reached.
Structure random_graph_max_degree(int n, int max_degree, double edge_fraction,
                                  std::mt19937& rng);

// Degree-bounded graph plus an independently sampled unary color G.
Structure random_colored_graph(int n, int max_degree, double edge_fraction, double color_p,
                               std::mt19937& rng);

}  // namespace gaifman

#endif
