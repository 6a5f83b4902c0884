#ifndef GAIFMAN_TURING_HPP
#define GAIFMAN_TURING_HPP

#include <map>
#include <optional>

#include "gaifman/formula.hpp"
#include "gaifman/structure.hpp"

namespace gaifman {

enum class Move { Left, Right };

struct TmTransition {
    std::string next_state;
    std::string write;
    Move move;
};

// One-tape machine; accept/reject states have no outgoing transitions. The
// tape starts with a '$' marker at position 0; blanks are '_'.
struct TuringMachine {
    std::vector<std::string> states;  // first entry is the start state
    std::string accept_state;
    std::string reject_state;
    std::vector<std::string> alphabet;  // working letters, excludes '$' and '_'
    std::map<std::pair<std::string, std::string>, TmTransition> delta;

    const std::string& start_state() const { return states.front(); }
    void validate() const;

    // Text format: lines 'states: q0 qa qr', 'accept: qa', 'reject: qr',
    // 'alphabet: 1 0', 'delta: (q,a) -> (q2,b,L|R)'.
    static TuringMachine parse(const std::string& text);
    std::string to_text() const;
};

struct TmConfiguration {
    std::vector<std::string> tape;  // letters or '_', tape[0] is under '$'? no: cells after $
    int head = 0;                  // 0-based tape cell
    std::string state;
};

struct EncodedRun {
    Structure structure;       // over {leq,S,E} + unary state/letter predicates
    bool halted = false;       // reached accept/reject within the step budget
    bool accepted = false;
    int steps = 0;             // number of transitions encoded
    std::vector<std::vector<int>> chains;  // element ids per configuration component
};

// Signature used by encodings: leq/S/E plus q_<state> and P_<letter>, P_mark
// ('$') and P_blank ('_').
Signature tm_signature(const TuringMachine& m);

// Run m on w for at most max_steps transitions; encode each configuration as
// a chained-order component (sizes |w|+2, |w|+3, ...), letters and the head
// state as unary predicates.
EncodedRun encode_run(const TuringMachine& m, const std::string& word, int max_steps);

struct ThetaFormulas {
    Formula theta_c;  // C(x) is a valid configuration
    Formula theta_t;  // theta_T(x,y): components step correctly, 2 free vars
    Formula theta_i;  // x is the marker of the initial configuration, no S-pred
    Formula theta_f;  // x lies in a halted configuration with no S-successor
    Formula theta_n;  // x lies in a component with no S-successor
};

ThetaFormulas theta_formulas(const TuringMachine& m, const std::string& word);

enum class PhiMVariant { RunExists, RunHalts };
Formula phi_m(const TuringMachine& m, const std::string& word, PhiMVariant variant);

}  // namespace gaifman

#endif
