#ifndef GAIFMAN_FORMULA_HPP
#define GAIFMAN_FORMULA_HPP

#include <memory>
#include <string>
#include <vector>

#include "gaifman/signature.hpp"

namespace gaifman {

enum class FKind {
    Atom,           // rel(vars)
    Equal,          // x = y
    DistLE,         // d(x,y) <= radius
    DistGT,         // d(x,y) > radius
    Not,
    And,            // n-ary; empty = true
    Or,             // n-ary; empty = false
    Implies,
    Exists,
    Forall,
    GuardedExists,  // exists var in N[radius](anchors). body
    GuardedForall,
    SetExists,
    SetForall,
    InSet,          // x in X
};

struct FNode;
using FRef = std::shared_ptr<const FNode>;

struct FNode {
    FKind kind;
    // Atom: rel index + name; DistLE/DistGT & guards: radius.
    int rel = -1;
    std::string rel_name;
    int radius = 0;
    std::vector<std::string> vars;   // Atom/Equal/Dist arguments; binder var at vars[0]; InSet: {x, X}
    std::vector<std::string> anchors;  // guarded quantifiers
    std::vector<FRef> children;

    // Cached free element / set variables, sorted, computed at construction.
    std::vector<std::string> free_vars;
    std::vector<std::string> free_set_vars;
};

class Formula {
public:
    Formula() = default;
    explicit Formula(FRef node) : node_(std::move(node)) {}
    const FNode& node() const { return *node_; }
    const FRef& ref() const { return node_; }
    bool valid() const { return node_ != nullptr; }

    FKind kind() const { return node_->kind; }
    const std::vector<FRef>& children() const { return node_->children; }
    Formula child(std::size_t i) const { return Formula(node_->children.at(i)); }

    const std::vector<std::string>& free_vars() const { return node_->free_vars; }
    const std::vector<std::string>& free_set_vars() const { return node_->free_set_vars; }
    bool is_sentence() const { return free_vars().empty() && free_set_vars().empty(); }

    friend bool operator==(const Formula& a, const Formula& b) {
        return structurally_equal(a.node_, b.node_);
    }
    static bool structurally_equal(const FRef& a, const FRef& b);

private:
    FRef node_;
};

// Builders.
Formula f_atom(const Signature& sig, const std::string& rel, std::vector<std::string> vars);
Formula f_atom(int rel, std::string rel_name, std::vector<std::string> vars);
Formula f_equal(std::string x, std::string y);
Formula f_dist_le(std::string x, std::string y, int radius);
Formula f_dist_gt(std::string x, std::string y, int radius);
Formula f_not(Formula f);
Formula f_and(std::vector<Formula> parts);   // flattens nested Ands, drops true
Formula f_or(std::vector<Formula> parts);    // flattens nested Ors, drops false
Formula f_implies(Formula a, Formula b);
Formula f_exists(std::string var, Formula body);
Formula f_forall(std::string var, Formula body);
Formula f_guarded_exists(std::string var, std::vector<std::string> anchors, int radius, Formula body);
Formula f_guarded_forall(std::string var, std::vector<std::string> anchors, int radius, Formula body);
Formula f_set_exists(std::string var, Formula body);
Formula f_set_forall(std::string var, Formula body);
Formula f_in_set(std::string x, std::string set_var);
Formula f_true();
Formula f_false();

bool is_true(const Formula& f);   // And()
bool is_false(const Formula& f);  // Or()

// Surface syntax.
std::string print_formula(const Formula& f);
Formula parse_formula(const std::string& text, const Signature& sig);

// Capture-free variable renaming (free occurrences of `from` become `to`).
Formula rename_free_var(const Formula& f, const std::string& from, const std::string& to);

// Fresh variable not occurring (free or bound) in any of the given formulas.
std::string fresh_var(const std::string& stem, const std::vector<Formula>& avoid);

}  // namespace gaifman

#endif
