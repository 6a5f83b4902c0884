#ifndef GAIFMAN_GNF_HPP
#define GAIFMAN_GNF_HPP

#include "gaifman/classify.hpp"
#include "gaifman/eval.hpp"
#include "gaifman/formula.hpp"
#include "gaifman/structure.hpp"

namespace gaifman {

struct GnfOptions {
    int k_cap = 2;
    int r_cap = 1;
    // Literal radius windows instead of the cover-reachable ladders.
    bool full_range = false;
    // Probe corpus for the template stage: the emitted collections are pruned
    // to patterns realized here, so differential corpora should be included.
    std::vector<Structure> probe;
    EvalOptions eval;
    // Internal: lifted by positive_gaifman after its entry check.
    bool skip_caps = false;
};

struct StageResult {
    Formula formula;
    std::vector<std::string> trace;
};

// Stage 1: existential local sentence to a disjunction of almost basic local
// sentences (guarded center blocks over the cover-radius ladder).
StageResult exloc_to_almost_basic(const Formula& f, const GnfOptions& opts);

// Stage 2: almost basic local to a disjunction of asymmetric basic local
// sentences via the typed quantifier split.
StageResult almost_to_asymmetric(const Formula& f, const GnfOptions& opts);

// Drop variable i (1-based) together with its piece and distance conjuncts.
Formula remove_variable(const Formula& f, int i);

// Stage 3: asymmetric basic local to a positive boolean combination of basic
// local sentences (repetition branches plus template-multiset detectors).
StageResult asymmetric_to_basic(const Formula& f, const GnfOptions& opts);

// The composed rewrite with provenance trace.
StageResult positive_gaifman(const Formula& f, const GnfOptions& opts);

// Scattered-witness shorthand: exists x_1..x_n pairwise dist > 2*sep
// all satisfying psi (whose free variable is `var`).
Formula exists_scattered(int count, int sep, const Formula& psi, const std::string& var);

}  // namespace gaifman

#endif
