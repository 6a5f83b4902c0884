#include "gaifman/eval.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace gaifman {

namespace {

// Inline-storage key: quantifier nodes rarely have more than a few free
// variables, and heap traffic here dominates evaluation otherwise.
struct MemoKey {
    const FNode* node = nullptr;
    std::uint8_t n_elem = 0, n_set = 0;
    std::array<int, 8> elem_values{};
    std::array<std::uint64_t, 2> set_values{};

    bool operator==(const MemoKey& o) const {
        return node == o.node && n_elem == o.n_elem && n_set == o.n_set &&
               elem_values == o.elem_values && set_values == o.set_values;
    }
};

struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
        std::size_t h = std::hash<const void*>()(k.node);
        for (int i = 0; i < k.n_elem; ++i)
            h = h * 1000003u + static_cast<std::size_t>(k.elem_values[static_cast<std::size_t>(i)] + 1);
        for (int i = 0; i < k.n_set; ++i)
            h = h * 1000003u + std::hash<std::uint64_t>()(k.set_values[static_cast<std::size_t>(i)]);
        return h;
    }
};

}  // namespace

struct Evaluator::Impl {
    const Structure& s;
    EvalOptions opts;
    std::vector<std::vector<int>> dist;
    std::unordered_map<std::string, int> rel_by_name;
    std::unordered_map<MemoKey, bool, MemoKeyHash> memo;

    // Mutable evaluation state.
    std::unordered_map<std::string, int> env;
    std::unordered_map<std::string, std::uint64_t> set_env;

    explicit Impl(const Structure& structure, EvalOptions options) : s(structure), opts(options) {
        dist = all_pairs_distances(gaifman_graph(s));
        for (int r = 0; r < s.signature().size(); ++r)
            rel_by_name[s.signature().relation(r).name] = r;
    }

    int lookup(const std::string& var) const {
        auto it = env.find(var);
        if (it == env.end()) throw std::runtime_error("unbound variable: " + var);
        return it->second;
    }

    std::uint64_t lookup_set(const std::string& var) const {
        auto it = set_env.find(var);
        if (it == set_env.end()) throw std::runtime_error("unbound set variable: " + var);
        return it->second;
    }

    int relation_index(const FNode& n) const {
        auto it = rel_by_name.find(n.rel_name);
        if (it == rel_by_name.end())
            throw std::runtime_error("relation not in structure signature: " + n.rel_name);
        return it->second;
    }

    int distance(int a, int b) const { return a == b ? 0 : dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

    std::optional<int> save_elem(const std::string& var) const {
        auto it = env.find(var);
        return it == env.end() ? std::nullopt : std::optional<int>(it->second);
    }
    void restore_elem(const std::string& var, const std::optional<int>& saved) {
        if (saved)
            env[var] = *saved;
        else
            env.erase(var);
    }
    std::optional<std::uint64_t> save_set(const std::string& var) const {
        auto it = set_env.find(var);
        return it == set_env.end() ? std::nullopt : std::optional<std::uint64_t>(it->second);
    }
    void restore_set(const std::string& var, const std::optional<std::uint64_t>& saved) {
        if (saved)
            set_env[var] = *saved;
        else
            set_env.erase(var);
    }

    // Elements within `radius` of any anchor value, ascending.
    std::vector<int> ball(const std::vector<std::string>& anchors, int radius) {
        std::vector<int> out;
        for (int v = 0; v < s.domain_size(); ++v) {
            for (const auto& a : anchors) {
                if (distance(lookup(a), v) <= radius) {
                    out.push_back(v);
                    break;
                }
            }
        }
        return out;
    }

    bool eval_node(const FNode& n) {
        // Only quantifier nodes are worth a memo entry; atoms and boolean
        // nodes are cheaper than the key construction.
        switch (n.kind) {
            case FKind::Exists:
            case FKind::Forall:
            case FKind::GuardedExists:
            case FKind::GuardedForall:
            case FKind::SetExists:
            case FKind::SetForall:
                break;
            default:
                return eval_raw(n);
        }
        if (n.free_vars.size() > 8 || n.free_set_vars.size() > 2) return eval_raw(n);
        MemoKey key;
        key.node = &n;
        for (const auto& v : n.free_vars)
            key.elem_values[key.n_elem++] = lookup(v);
        for (const auto& v : n.free_set_vars)
            key.set_values[key.n_set++] = lookup_set(v);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool result = eval_raw(n);
        memo.emplace(std::move(key), result);
        return result;
    }

    bool eval_raw(const FNode& n) {
        switch (n.kind) {
            case FKind::Atom: {
                Tuple t;
                t.reserve(n.vars.size());
                for (const auto& v : n.vars) t.push_back(lookup(v));
                return s.has(relation_index(n), t);
            }
            case FKind::Equal:
                return lookup(n.vars[0]) == lookup(n.vars[1]);
            case FKind::DistLE:
                return distance(lookup(n.vars[0]), lookup(n.vars[1])) <= n.radius;
            case FKind::DistGT:
                return distance(lookup(n.vars[0]), lookup(n.vars[1])) > n.radius;
            case FKind::Not:
                return !eval_node(*n.children[0]);
            case FKind::And:
                for (const auto& c : n.children)
                    if (!eval_node(*c)) return false;
                return true;
            case FKind::Or:
                for (const auto& c : n.children)
                    if (eval_node(*c)) return true;
                return false;
            case FKind::Implies:
                return !eval_node(*n.children[0]) || eval_node(*n.children[1]);
            case FKind::Exists:
            case FKind::Forall: {
                bool ex = n.kind == FKind::Exists;
                auto saved = save_elem(n.vars[0]);
                for (int v = 0; v < s.domain_size(); ++v) {
                    env[n.vars[0]] = v;
                    if (eval_node(*n.children[0]) == ex) {
                        restore_elem(n.vars[0], saved);
                        return ex;
                    }
                }
                restore_elem(n.vars[0], saved);
                return !ex;
            }
            case FKind::GuardedExists:
            case FKind::GuardedForall: {
                bool ex = n.kind == FKind::GuardedExists;
                auto candidates = ball(n.anchors, n.radius);
                auto saved = save_elem(n.vars[0]);
                for (int v : candidates) {
                    env[n.vars[0]] = v;
                    if (eval_node(*n.children[0]) == ex) {
                        restore_elem(n.vars[0], saved);
                        return ex;
                    }
                }
                restore_elem(n.vars[0], saved);
                return !ex;
            }
            case FKind::SetExists:
            case FKind::SetForall: {
                if (s.domain_size() > opts.mso_cap)
                    throw std::runtime_error("MSO size cap exceeded: domain " +
                                             std::to_string(s.domain_size()) + " > cap " +
                                             std::to_string(opts.mso_cap));
                bool ex = n.kind == FKind::SetExists;
                auto saved = save_set(n.vars[0]);
                std::uint64_t limit = s.domain_size() >= 64 ? 0 : (1ull << s.domain_size());
                for (std::uint64_t mask = 0; mask < limit; ++mask) {
                    set_env[n.vars[0]] = mask;
                    if (eval_node(*n.children[0]) == ex) {
                        restore_set(n.vars[0], saved);
                        return ex;
                    }
                }
                restore_set(n.vars[0], saved);
                return !ex;
            }
            case FKind::InSet:
                return (lookup_set(n.vars[1]) >> lookup(n.vars[0])) & 1;
        }
        throw std::logic_error("eval: unreachable");
    }
};

Evaluator::Evaluator(const Structure& s, EvalOptions opts)
    : impl_(std::make_unique<Impl>(s, opts)) {}
Evaluator::~Evaluator() = default;

bool Evaluator::eval(const Formula& f, const Env& env, const SetEnv& set_env) {
    impl_->env.clear();
    impl_->set_env.clear();
    for (const auto& [k, v] : env) {
        if (v < 0 || v >= impl_->s.domain_size())
            throw std::out_of_range("environment binds " + k + " outside the domain");
        impl_->env[k] = v;
    }
    for (const auto& [k, v] : set_env) impl_->set_env[k] = v;
    return impl_->eval_node(f.node());
}

int Evaluator::dist(int a, int b) const { return impl_->distance(a, b); }
const Structure& Evaluator::structure() const { return impl_->s; }

bool eval(const Structure& s, const Formula& f, const Env& env, const SetEnv& set_env,
          const EvalOptions& opts) {
    Evaluator ev(s, opts);
    return ev.eval(f, env, set_env);
}

std::optional<Env> existential_witness(const Structure& s, const Formula& f,
                                       const EvalOptions& opts) {
    std::vector<std::string> prefix;
    Formula matrix = f;
    while (matrix.kind() == FKind::Exists) {
        prefix.push_back(matrix.node().vars[0]);
        matrix = matrix.child(0);
    }
    Evaluator ev(s, opts);
    Env env;
    std::vector<int> assignment(prefix.size(), 0);
    if (prefix.empty()) return ev.eval(f) ? std::optional<Env>(Env{}) : std::nullopt;
    if (s.domain_size() == 0) return std::nullopt;
    // Lexicographic enumeration of assignments.
    std::size_t depth = 0;
    assignment.assign(prefix.size(), 0);
    while (true) {
        if (depth == prefix.size()) {
            for (std::size_t i = 0; i < prefix.size(); ++i) env[prefix[i]] = assignment[i];
            if (ev.eval(matrix, env)) return env;
            env.clear();
            --depth;
            ++assignment[depth];
        } else if (assignment[depth] >= s.domain_size()) {
            if (depth == 0) return std::nullopt;
            assignment[depth] = 0;
            --depth;
            ++assignment[depth];
        } else {
            ++depth;
        }
    }
}

}  // namespace gaifman
