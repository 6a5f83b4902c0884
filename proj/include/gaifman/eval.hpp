#ifndef GAIFMAN_EVAL_HPP
#define GAIFMAN_EVAL_HPP

#include <map>
#include <optional>
#include <string>

#include "gaifman/formula.hpp"
#include "gaifman/structure.hpp"

namespace gaifman {

struct EvalOptions {
    int mso_cap = 12;  // largest domain over which set quantifiers are expanded
};

using Env = std::map<std::string, int>;
using SetEnv = std::map<std::string, std::uint64_t>;  // element bitmasks

bool eval(const Structure& s, const Formula& f, const Env& env = {}, const SetEnv& set_env = {},
          const EvalOptions& opts = {});

inline bool eval_sentence(const Structure& s, const Formula& f, const EvalOptions& opts = {}) {
    return eval(s, f, {}, {}, opts);
}

// Strip the outermost block of plain existential quantifiers and search for a
// satisfying assignment of those variables (lexicographic); nullopt if none.
std::optional<Env> existential_witness(const Structure& s, const Formula& f,
                                       const EvalOptions& opts = {});

// Reusable evaluation context: caches the Gaifman distance matrix and
// memoizes subformula evaluations. One context per structure.
class Evaluator {
public:
    explicit Evaluator(const Structure& s, EvalOptions opts = {});
    ~Evaluator();
    Evaluator(const Evaluator&) = delete;
    Evaluator& operator=(const Evaluator&) = delete;

    bool eval(const Formula& f, const Env& env = {}, const SetEnv& set_env = {});
    int dist(int a, int b) const;
    const Structure& structure() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace gaifman

#endif
