#ifndef GAIFMAN_CLASSIFY_HPP
#define GAIFMAN_CLASSIFY_HPP

#include <optional>

#include "gaifman/formula.hpp"

namespace gaifman {

// The sentence hierarchy, most specific first. Each class up to
// ExistentialLocal subsumes the previous ones.
enum class SentenceClass {
    BasicLocal,
    AsymmetricBasicLocal,
    AlmostBasicLocal,
    ExistentialLocal,
    PositiveBasicLocalCombination,
    Other,
};

std::string to_string(SentenceClass c);

struct ClassifyResult {
    SentenceClass cls = SentenceClass::Other;
    int k = 0;          // number of outer existential variables
    int r = 0;          // the class's radius parameter
    int r_full = 0;     // locality radius of the whole matrix (existential-local reading)
    int sep = 0;        // DistGT threshold of the pairwise block (0 when k <= 1)
    std::vector<std::string> vars;   // the outer variables, in order
    std::vector<Formula> psis;       // per-variable matrix pieces (Asymmetric/Basic)
    Formula matrix;                  // matrix after removing the distance block
    Formula full_matrix;             // the whole body under the existential prefix
};

// Most specific syntactic class of the sentence, tolerating conjunct
// reordering. Distance blocks with sep >= 2*(matrix radius) are accepted.
ClassifyResult classify(const Formula& f);

}  // namespace gaifman

#endif
