#ifndef GAIFMAN_MINIMAL_HPP
#define GAIFMAN_MINIMAL_HPP

#include "gaifman/corpus.hpp"
#include "gaifman/eval.hpp"
#include "gaifman/formula.hpp"

namespace gaifman {

// Models of phi in the corpus with no proper induced substructure within the
// corpus also modeling phi; deduplicated up to isomorphism.
std::vector<Structure> minimal_models(const Formula& phi,
                                      const std::vector<Structure>& corpus,
                                      const EvalOptions& opts = {});

}  // namespace gaifman

#endif
