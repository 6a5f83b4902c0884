#include "gaifman/transform.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gaifman {

namespace {

std::string fresh(int* counter) { return "_w" + std::to_string((*counter)++); }

// Some relation tuple contains both a and b (at distinct positions).
Formula adjacent_step(const std::string& a, const std::string& b, const Signature& sig,
                      const std::vector<std::string>& guard_anchors, int guard_radius,
                      int* counter) {
    std::vector<Formula> options;
    for (int r = 0; r < sig.size(); ++r) {
        int arity = sig.arity(r);
        for (int i = 0; i < arity; ++i) {
            for (int j = 0; j < arity; ++j) {
                if (i == j) continue;
                std::vector<std::string> args(static_cast<std::size_t>(arity));
                std::vector<std::string> aux;
                for (int p = 0; p < arity; ++p) {
                    if (p == i)
                        args[static_cast<std::size_t>(p)] = a;
                    else if (p == j)
                        args[static_cast<std::size_t>(p)] = b;
                    else {
                        std::string v = fresh(counter);
                        args[static_cast<std::size_t>(p)] = v;
                        aux.push_back(v);
                    }
                }
                Formula atom = f_atom(r, sig.relation(r).name, args);
                for (auto it = aux.rbegin(); it != aux.rend(); ++it) {
                    if (guard_anchors.empty())
                        atom = f_exists(*it, atom);
                    else
                        atom = f_guarded_exists(*it, guard_anchors, guard_radius, atom);
                }
                options.push_back(atom);
            }
        }
    }
    return f_or(std::move(options));
}

}  // namespace

Formula distance_chain_le(const std::string& x, const std::string& y, int s, const Signature& sig,
                          const std::vector<std::string>& guard_anchors, int guard_radius,
                          int* counter) {
    if (s == 0) return f_equal(x, y);
    // x = z0, z1, ..., z_{s-1}, zs = y with each step equal-or-adjacent.
    std::vector<std::string> chain{x};
    for (int i = 0; i < s - 1; ++i) chain.push_back(fresh(counter));
    chain.push_back(y);
    std::vector<Formula> steps;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        steps.push_back(f_or({f_equal(chain[i], chain[i + 1]),
                              adjacent_step(chain[i], chain[i + 1], sig, guard_anchors,
                                            guard_radius, counter)}));
    }
    Formula body = f_and(std::move(steps));
    for (int i = s - 2; i >= 0; --i) {
        const std::string& v = chain[static_cast<std::size_t>(i + 1)];
        if (guard_anchors.empty())
            body = f_exists(v, body);
        else
            body = f_guarded_exists(v, guard_anchors, guard_radius, body);
    }
    return body;
}

namespace {

Formula guard_membership(const std::string& x, const std::vector<std::string>& inner_anchors,
                         int inner_radius, const Signature& sig,
                         const std::vector<std::string>& outer_anchors, int outer_radius,
                         int* counter) {
    std::vector<Formula> opts;
    for (const auto& a : inner_anchors)
        opts.push_back(distance_chain_le(x, a, inner_radius, sig, outer_anchors, outer_radius, counter));
    return f_or(std::move(opts));
}

Formula relativize_rec(const Formula& f, const std::vector<std::string>& anchors, int radius,
                       const Signature& sig, int* counter) {
    const FNode& n = f.node();
    switch (n.kind) {
        case FKind::Atom:
        case FKind::Equal:
        case FKind::InSet:
            return f;
        case FKind::DistLE:
            return distance_chain_le(n.vars[0], n.vars[1], n.radius, sig, anchors, radius, counter);
        case FKind::DistGT:
            return f_not(
                distance_chain_le(n.vars[0], n.vars[1], n.radius, sig, anchors, radius, counter));
        case FKind::Not:
            return f_not(relativize_rec(f.child(0), anchors, radius, sig, counter));
        case FKind::And:
        case FKind::Or: {
            std::vector<Formula> parts;
            for (const auto& c : n.children)
                parts.push_back(relativize_rec(Formula(c), anchors, radius, sig, counter));
            return n.kind == FKind::And ? f_and(std::move(parts)) : f_or(std::move(parts));
        }
        case FKind::Implies:
            return f_implies(relativize_rec(f.child(0), anchors, radius, sig, counter),
                             relativize_rec(f.child(1), anchors, radius, sig, counter));
        case FKind::Exists:
        case FKind::Forall: {
            std::string var = n.vars[0];
            Formula body = f.child(0);
            if (std::find(anchors.begin(), anchors.end(), var) != anchors.end()) {
                std::string renamed = var + "_r" + std::to_string((*counter)++);
                body = rename_free_var(body, var, renamed);
                var = renamed;
            }
            Formula rbody = relativize_rec(body, anchors, radius, sig, counter);
            return n.kind == FKind::Exists ? f_guarded_exists(var, anchors, radius, rbody)
                                           : f_guarded_forall(var, anchors, radius, rbody);
        }
        case FKind::GuardedExists:
        case FKind::GuardedForall: {
            std::string var = n.vars[0];
            Formula body = f.child(0);
            if (std::find(anchors.begin(), anchors.end(), var) != anchors.end()) {
                std::string renamed = var + "_r" + std::to_string((*counter)++);
                body = rename_free_var(body, var, renamed);
                var = renamed;
            }
            Formula member =
                guard_membership(var, n.anchors, n.radius, sig, anchors, radius, counter);
            Formula rbody = relativize_rec(body, anchors, radius, sig, counter);
            if (n.kind == FKind::GuardedExists)
                return f_guarded_exists(var, anchors, radius, f_and({member, rbody}));
            return f_guarded_forall(var, anchors, radius, f_implies(member, rbody));
        }
        case FKind::SetExists:
        case FKind::SetForall: {
            Formula rbody = relativize_rec(f.child(0), anchors, radius, sig, counter);
            std::string y = fresh(counter);
            std::vector<Formula> in_ball;
            for (const auto& a : anchors) in_ball.push_back(f_dist_le(y, a, radius));
            Formula subset_guard =
                f_forall(y, f_implies(f_in_set(y, n.vars[0]), f_or(std::move(in_ball))));
            if (n.kind == FKind::SetExists)
                return f_set_exists(n.vars[0], f_and({subset_guard, rbody}));
            return f_set_forall(n.vars[0], f_implies(subset_guard, rbody));
        }
    }
    throw std::logic_error("relativize: unreachable");
}

Formula expand_rec(const Formula& f, const Signature& sig, int* counter) {
    const FNode& n = f.node();
    static const std::vector<std::string> no_guard;
    switch (n.kind) {
        case FKind::Atom:
        case FKind::Equal:
        case FKind::InSet:
            return f;
        case FKind::DistLE:
            return distance_chain_le(n.vars[0], n.vars[1], n.radius, sig, no_guard, 0, counter);
        case FKind::DistGT:
            return f_not(distance_chain_le(n.vars[0], n.vars[1], n.radius, sig, no_guard, 0, counter));
        case FKind::Not:
            return f_not(expand_rec(f.child(0), sig, counter));
        case FKind::And:
        case FKind::Or: {
            std::vector<Formula> parts;
            for (const auto& c : n.children) parts.push_back(expand_rec(Formula(c), sig, counter));
            return n.kind == FKind::And ? f_and(std::move(parts)) : f_or(std::move(parts));
        }
        case FKind::Implies:
            return f_implies(expand_rec(f.child(0), sig, counter), expand_rec(f.child(1), sig, counter));
        case FKind::Exists:
            return f_exists(n.vars[0], expand_rec(f.child(0), sig, counter));
        case FKind::Forall:
            return f_forall(n.vars[0], expand_rec(f.child(0), sig, counter));
        case FKind::GuardedExists:
        case FKind::GuardedForall: {
            Formula member = guard_membership(n.vars[0], n.anchors, n.radius, sig, no_guard, 0, counter);
            Formula body = expand_rec(f.child(0), sig, counter);
            if (n.kind == FKind::GuardedExists) return f_exists(n.vars[0], f_and({member, body}));
            return f_forall(n.vars[0], f_implies(member, body));
        }
        case FKind::SetExists:
            return f_set_exists(n.vars[0], expand_rec(f.child(0), sig, counter));
        case FKind::SetForall:
            return f_set_forall(n.vars[0], expand_rec(f.child(0), sig, counter));
    }
    throw std::logic_error("expand_distance: unreachable");
}

}  // namespace

Formula relativize(const Formula& f, const std::vector<std::string>& anchors, int radius,
                   const Signature& sig) {
    if (anchors.empty()) throw std::invalid_argument("relativize: empty anchor tuple");
    for (const auto& a : anchors) {
        const auto& fv = f.free_vars();
        (void)fv;  // anchors need not occur in f; they only delimit the ball
        (void)a;
    }
    int counter = 0;
    return relativize_rec(f, anchors, radius, sig, &counter);
}

Formula expand_distance(const Formula& f, const Signature& sig) {
    int counter = 0;
    return expand_rec(f, sig, &counter);
}

int quantifier_rank(const Formula& f) {
    const FNode& n = f.node();
    switch (n.kind) {
        case FKind::Atom:
        case FKind::Equal:
        case FKind::InSet:
            return 0;
        case FKind::DistLE:
        case FKind::DistGT:
            return std::max(0, n.radius - 1);
        case FKind::Not:
            return quantifier_rank(f.child(0));
        case FKind::And:
        case FKind::Or:
        case FKind::Implies: {
            int m = 0;
            for (const auto& c : n.children) m = std::max(m, quantifier_rank(Formula(c)));
            return m;
        }
        case FKind::Exists:
        case FKind::Forall:
        case FKind::SetExists:
        case FKind::SetForall:
            return 1 + quantifier_rank(f.child(0));
        case FKind::GuardedExists:
        case FKind::GuardedForall:
            return 1 + n.radius + quantifier_rank(f.child(0));
    }
    throw std::logic_error("quantifier_rank: unreachable");
}

namespace {

std::optional<int> locality_rec(const FNode& n, std::map<std::string, int>& depth) {
    auto var_depth = [&](const std::string& v) -> std::optional<int> {
        auto it = depth.find(v);
        if (it == depth.end()) return std::nullopt;
        return it->second;
    };
    switch (n.kind) {
        case FKind::Atom: {
            int m = 0;
            for (const auto& v : n.vars) {
                auto d = var_depth(v);
                if (!d) return std::nullopt;
                m = std::max(m, *d);
            }
            return m;
        }
        case FKind::Equal:
        case FKind::InSet: {
            int m = 0;
            for (const auto& v : n.vars) {
                if (n.kind == FKind::InSet && &v == &n.vars[1]) break;  // set var carries no depth
                auto d = var_depth(v);
                if (!d) return std::nullopt;
                m = std::max(m, *d);
            }
            return m;
        }
        case FKind::DistLE:
        case FKind::DistGT: {
            auto du = var_depth(n.vars[0]), dv = var_depth(n.vars[1]);
            if (!du || !dv) return std::nullopt;
            int witness = (n.radius + *du + *dv + 1) / 2;  // path nodes stay this close
            return std::max({*du, *dv, witness});
        }
        case FKind::Not:
            return locality_rec(*n.children[0], depth);
        case FKind::And:
        case FKind::Or:
        case FKind::Implies: {
            int m = 0;
            for (const auto& c : n.children) {
                auto d = locality_rec(*c, depth);
                if (!d) return std::nullopt;
                m = std::max(m, *d);
            }
            return m;
        }
        case FKind::Exists:
        case FKind::Forall:
            return std::nullopt;  // unguarded quantifier: not syntactically local
        case FKind::GuardedExists:
        case FKind::GuardedForall: {
            int base = -1;
            for (const auto& a : n.anchors) {
                auto d = var_depth(a);
                if (!d) return std::nullopt;
                base = std::max(base, *d);
            }
            int d_new = base + n.radius;
            auto saved = depth.find(n.vars[0]) != depth.end()
                             ? std::optional<int>(depth[n.vars[0]])
                             : std::nullopt;
            depth[n.vars[0]] = d_new;
            auto body = locality_rec(*n.children[0], depth);
            if (saved)
                depth[n.vars[0]] = *saved;
            else
                depth.erase(n.vars[0]);
            if (!body) return std::nullopt;
            return std::max(d_new, *body);
        }
        case FKind::SetExists:
        case FKind::SetForall:
            return locality_rec(*n.children[0], depth);
    }
    throw std::logic_error("locality_radius: unreachable");
}

}  // namespace

std::optional<int> locality_radius(const Formula& f, const std::vector<std::string>& anchors) {
    std::map<std::string, int> depth;
    for (const auto& a : anchors) depth[a] = 0;
    return locality_rec(f.node(), depth);
}

}  // namespace gaifman
