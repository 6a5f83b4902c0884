#include "gaifman/minimal.hpp"

namespace gaifman {

std::vector<Structure> minimal_models(const Formula& phi, const std::vector<Structure>& corpus,
                                      const EvalOptions& opts) {
    std::vector<Structure> models;
    for (const Structure& s : corpus)
        if (eval_sentence(s, phi, opts)) models.push_back(s);

    std::vector<Structure> minimal;
    for (const Structure& a : models) {
        bool is_minimal = true;
        for (const Structure& b : models) {
            if (b.domain_size() >= a.domain_size()) continue;
            if (find_induced_embedding(b, a).has_value()) {
                is_minimal = false;
                break;
            }
        }
        if (!is_minimal) continue;
        // Equal-size proper substructures cannot exist; dedupe up to iso.
        bool fresh = true;
        for (const Structure& seen : minimal)
            if (isomorphic(seen, a).has_value()) {
                fresh = false;
                break;
            }
        if (fresh) minimal.push_back(a);
    }
    return minimal;
}

}  // namespace gaifman
