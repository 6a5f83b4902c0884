#ifndef GAIFMAN_SPECTER_NF_HPP
#define GAIFMAN_SPECTER_NF_HPP

#include "gaifman/corpus.hpp"
#include "gaifman/eval.hpp"
#include "gaifman/local_type.hpp"

namespace gaifman {

struct SpecterNF {
    Formula psi;  // disjunction over the specter images of the models
    // One candidate per image T: the conjunction of its type sentences
    // exists x-bar. tau; `pieces` lists those sentences individually.
    std::vector<Formula> candidates;
    std::vector<std::vector<Formula>> pieces;
    bool preserved = true;  // no preorder-violating pair within the corpus
    std::vector<std::pair<std::string, std::string>> violations;
    // Per corpus item: (name, phi verdict, psi verdict).
    std::vector<std::tuple<std::string, bool, bool>> agreement;
    bool agree_everywhere = true;
    bool empty_domain_edge = false;  // psi rejects the empty structure where phi accepts
};

// The finite-preservation normal form: collects the specters of phi's models
// in the corpus and realizes each type as its characteristic sentence. When
// phi is preserved under the (r,q,k) preorder over the corpus, psi agrees
// with phi there; otherwise the report carries the violating pairs.
SpecterNF specter_normal_form(const Formula& phi, const Corpus& corpus, int r, int q, int k,
                              const EvalOptions& opts = {});

}  // namespace gaifman

#endif
