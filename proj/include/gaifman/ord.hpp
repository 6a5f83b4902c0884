#ifndef GAIFMAN_ORD_HPP
#define GAIFMAN_ORD_HPP

#include <optional>

#include "gaifman/formula.hpp"
#include "gaifman/structure.hpp"

namespace gaifman {

struct NamedFormula {
    std::string name;
    Formula formula;
};

// The twelve universal-local axioms of the chained-orders class, named
// (i)..(xii), over the {leq,S,E} signature (B-extended structures evaluate
// them unchanged).
std::vector<NamedFormula> axioms_ord();

struct AxiomReport {
    std::vector<std::pair<std::string, bool>> verdicts;  // per axiom
    bool all_pass = false;
    // When all axioms pass: recovered interval [m..n] per connected
    // component, in component order; empty on structural failure.
    std::vector<std::pair<int, int>> intervals;
    bool decomposed = false;
    std::string detail;
};

// Evaluate all axioms; on full pass run the structural decomposition into
// chained-order components and report the recovered intervals.
AxiomReport check_axioms(const Structure& s);

// Connected-component detector formulas and the flag property.
Formula phi_cc_paths();              // over {E/2}, via degree counting
Formula phi_cc_ord();                // over {leq,S,E}: two S-minimal elements
Formula phi_b(const Formula& cc);    // forall x. !B(x) | cc

}  // namespace gaifman

#endif
