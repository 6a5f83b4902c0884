#ifndef GAIFMAN_WITNESS_HPP
#define GAIFMAN_WITNESS_HPP

#include <optional>

#include "gaifman/eval.hpp"
#include "gaifman/formula.hpp"
#include "gaifman/structure.hpp"

namespace gaifman {

enum class WitnessFamily { Paths, Ord };

struct WitnessReport {
    Structure base;            // the all-unmarked structure A
    std::optional<Structure> flipped;   // Â: one B flag raised outside the witness balls
    int flipped_element = -1;
    std::vector<Tuple> witnesses;       // one tuple per existential-local conjunct
    bool base_satisfies_psi = false;    // A ⊨ psi
    bool flipped_satisfies_psi = false; // Â ⊨ psi (when built)
    bool flipped_satisfies_phi_b = true;
    std::string verdict;  // "counterexample" or "psi already disagrees with phi_B on A"
};

// Mechanizes the non-definability argument: builds the all-unmarked structure
// of the proof's size for the family, extracts witnesses of psi (a single
// existential-local sentence or a positive conjunction of them), flips a B
// flag outside their r-balls and reports the resulting disagreement with
// phi_B. psi must live over the B-extended signature of the family.
WitnessReport counterexample_witness(const Formula& psi, WitnessFamily family,
                                     const EvalOptions& opts = {});

}  // namespace gaifman

#endif
