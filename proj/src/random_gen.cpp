#include "gaifman/random_gen.hpp"

#include <algorithm>

namespace gaifman {

Structure random_graph_max_degree(int n, int max_degree, double edge_fraction,
                                  std::mt19937& rng) {
    Structure s(Signature::graph(), n);
    std::vector<std::pair<int, int>> candidates;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) candidates.push_back({a, b});
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    auto target = static_cast<std::size_t>(edge_fraction * static_cast<double>(candidates.size()));
    std::size_t added = 0;
    for (const auto& [a, b] : candidates) {
        if (added >= target) break;
        if (degree[static_cast<std::size_t>(a)] >= max_degree ||
            degree[static_cast<std::size_t>(b)] >= max_degree)
            continue;
        s.add(0, {a, b});
        s.add(0, {b, a});
        ++degree[static_cast<std::size_t>(a)];
        ++degree[static_cast<std::size_t>(b)];
        ++added;
    }
    return s;
}

Structure random_colored_graph(int n, int max_degree, double edge_fraction, double color_p,
                               std::mt19937& rng) {
    Structure base = random_graph_max_degree(n, max_degree, edge_fraction, rng);
    Structure s(Signature({{"E", 2}, {"c", 1}}), n);
    for (const Tuple& t : base.tuples(0)) s.add(0, t);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int v = 0; v < n; ++v)
        if (unit(rng) < color_p) s.add(1, {v});
    return s;
}

}  // namespace gaifman
