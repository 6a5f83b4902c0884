#include "gaifman/formula.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gaifman {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<std::string> merge(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<std::string> remove_one(std::vector<std::string> v, const std::string& x) {
    v.erase(std::remove(v.begin(), v.end(), x), v.end());
    return v;
}

FRef finish(std::shared_ptr<FNode> n) {
    // Compute cached free variables.
    switch (n->kind) {
        case FKind::Atom:
        case FKind::Equal:
        case FKind::DistLE:
        case FKind::DistGT:
            n->free_vars = sorted_unique(n->vars);
            break;
        case FKind::InSet:
            n->free_vars = {n->vars[0]};
            n->free_set_vars = {n->vars[1]};
            break;
        case FKind::Not:
        case FKind::And:
        case FKind::Or:
        case FKind::Implies:
            for (const auto& c : n->children) {
                n->free_vars = merge(n->free_vars, c->free_vars);
                n->free_set_vars = merge(n->free_set_vars, c->free_set_vars);
            }
            break;
        case FKind::Exists:
        case FKind::Forall:
            n->free_vars = remove_one(n->children[0]->free_vars, n->vars[0]);
            n->free_set_vars = n->children[0]->free_set_vars;
            break;
        case FKind::GuardedExists:
        case FKind::GuardedForall:
            n->free_vars = merge(remove_one(n->children[0]->free_vars, n->vars[0]),
                                 sorted_unique(n->anchors));
            n->free_set_vars = n->children[0]->free_set_vars;
            break;
        case FKind::SetExists:
        case FKind::SetForall:
            n->free_vars = n->children[0]->free_vars;
            n->free_set_vars = remove_one(n->children[0]->free_set_vars, n->vars[0]);
            break;
    }
    return n;
}

std::shared_ptr<FNode> make(FKind k) {
    auto n = std::make_shared<FNode>();
    n->kind = k;
    return n;
}

}  // namespace

bool Formula::structurally_equal(const FRef& a, const FRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->rel_name != b->rel_name || a->radius != b->radius ||
        a->vars != b->vars || a->anchors != b->anchors ||
        a->children.size() != b->children.size())
        return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!structurally_equal(a->children[i], b->children[i])) return false;
    return true;
}

Formula f_atom(const Signature& sig, const std::string& rel, std::vector<std::string> vars) {
    int idx = sig.index_of(rel);
    if (idx < 0) throw std::invalid_argument("unknown relation: " + rel);
    if (static_cast<int>(vars.size()) != sig.arity(idx))
        throw std::invalid_argument("arity mismatch for " + rel);
    return f_atom(idx, rel, std::move(vars));
}

Formula f_atom(int rel, std::string rel_name, std::vector<std::string> vars) {
    auto n = make(FKind::Atom);
    n->rel = rel;
    n->rel_name = std::move(rel_name);
    n->vars = std::move(vars);
    return Formula(finish(std::move(n)));
}

Formula f_equal(std::string x, std::string y) {
    auto n = make(FKind::Equal);
    n->vars = {std::move(x), std::move(y)};
    return Formula(finish(std::move(n)));
}

Formula f_dist_le(std::string x, std::string y, int radius) {
    if (radius < 0) throw std::invalid_argument("negative distance radius");
    auto n = make(FKind::DistLE);
    n->vars = {std::move(x), std::move(y)};
    n->radius = radius;
    return Formula(finish(std::move(n)));
}

Formula f_dist_gt(std::string x, std::string y, int radius) {
    if (radius < 0) throw std::invalid_argument("negative distance radius");
    auto n = make(FKind::DistGT);
    n->vars = {std::move(x), std::move(y)};
    n->radius = radius;
    return Formula(finish(std::move(n)));
}

Formula f_not(Formula f) {
    auto n = make(FKind::Not);
    n->children = {f.ref()};
    return Formula(finish(std::move(n)));
}

Formula f_and(std::vector<Formula> parts) {
    std::vector<FRef> flat;
    for (auto& p : parts) {
        if (is_true(p)) continue;
        if (p.kind() == FKind::And) {
            for (const auto& c : p.children()) flat.push_back(c);
        } else {
            flat.push_back(p.ref());
        }
    }
    if (flat.size() == 1) return Formula(flat[0]);
    auto n = make(FKind::And);
    n->children = std::move(flat);
    return Formula(finish(std::move(n)));
}

Formula f_or(std::vector<Formula> parts) {
    std::vector<FRef> flat;
    for (auto& p : parts) {
        if (is_false(p)) continue;
        if (p.kind() == FKind::Or) {
            for (const auto& c : p.children()) flat.push_back(c);
        } else {
            flat.push_back(p.ref());
        }
    }
    if (flat.size() == 1) return Formula(flat[0]);
    auto n = make(FKind::Or);
    n->children = std::move(flat);
    return Formula(finish(std::move(n)));
}

Formula f_implies(Formula a, Formula b) {
    auto n = make(FKind::Implies);
    n->children = {a.ref(), b.ref()};
    return Formula(finish(std::move(n)));
}

namespace {
Formula quantifier(FKind k, std::string var, Formula body) {
    auto n = make(k);
    n->vars = {std::move(var)};
    n->children = {body.ref()};
    return Formula(finish(std::move(n)));
}
Formula guarded(FKind k, std::string var, std::vector<std::string> anchors, int radius, Formula body) {
    if (anchors.empty()) throw std::invalid_argument("guarded quantifier needs anchors");
    if (radius < 0) throw std::invalid_argument("negative guard radius");
    auto n = make(k);
    n->vars = {std::move(var)};
    n->anchors = std::move(anchors);
    n->radius = radius;
    n->children = {body.ref()};
    return Formula(finish(std::move(n)));
}
}  // namespace

Formula f_exists(std::string var, Formula body) { return quantifier(FKind::Exists, std::move(var), std::move(body)); }
Formula f_forall(std::string var, Formula body) { return quantifier(FKind::Forall, std::move(var), std::move(body)); }
Formula f_guarded_exists(std::string var, std::vector<std::string> anchors, int radius, Formula body) {
    return guarded(FKind::GuardedExists, std::move(var), std::move(anchors), radius, std::move(body));
}
Formula f_guarded_forall(std::string var, std::vector<std::string> anchors, int radius, Formula body) {
    return guarded(FKind::GuardedForall, std::move(var), std::move(anchors), radius, std::move(body));
}
Formula f_set_exists(std::string var, Formula body) { return quantifier(FKind::SetExists, std::move(var), std::move(body)); }
Formula f_set_forall(std::string var, Formula body) { return quantifier(FKind::SetForall, std::move(var), std::move(body)); }

Formula f_in_set(std::string x, std::string set_var) {
    auto n = make(FKind::InSet);
    n->vars = {std::move(x), std::move(set_var)};
    return Formula(finish(std::move(n)));
}

Formula f_true() { return f_and({}); }
Formula f_false() { return f_or({}); }

bool is_true(const Formula& f) { return f.kind() == FKind::And && f.children().empty(); }
bool is_false(const Formula& f) { return f.kind() == FKind::Or && f.children().empty(); }

namespace {

// Precedence for printing: -> (1) | (2) & (3) ! / quantifiers (4) atoms (5).
int precedence(FKind k) {
    switch (k) {
        case FKind::Implies: return 1;
        case FKind::Or: return 2;
        case FKind::And: return 3;
        case FKind::Not:
        case FKind::Exists:
        case FKind::Forall:
        case FKind::GuardedExists:
        case FKind::GuardedForall:
        case FKind::SetExists:
        case FKind::SetForall: return 4;
        default: return 5;
    }
}

void print_rec(const FNode& n, int parent_prec, std::string& out) {
    int prec = precedence(n.kind);
    bool paren = prec < parent_prec;
    if (paren) out += '(';
    switch (n.kind) {
        case FKind::Atom: {
            out += n.rel_name + "(";
            for (std::size_t i = 0; i < n.vars.size(); ++i) {
                if (i) out += ',';
                out += n.vars[i];
            }
            out += ')';
            break;
        }
        case FKind::Equal:
            out += n.vars[0] + " = " + n.vars[1];
            break;
        case FKind::DistLE:
            out += "dist<=(" + n.vars[0] + "," + n.vars[1] + "," + std::to_string(n.radius) + ")";
            break;
        case FKind::DistGT:
            out += "dist>(" + n.vars[0] + "," + n.vars[1] + "," + std::to_string(n.radius) + ")";
            break;
        case FKind::Not:
            out += '!';
            print_rec(*n.children[0], 5, out);
            break;
        case FKind::And:
            if (n.children.empty()) {
                out += "true";
            } else {
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i) out += " & ";
                    print_rec(*n.children[i], prec + 1, out);
                }
            }
            break;
        case FKind::Or:
            if (n.children.empty()) {
                out += "false";
            } else {
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i) out += " | ";
                    print_rec(*n.children[i], prec + 1, out);
                }
            }
            break;
        case FKind::Implies:
            print_rec(*n.children[0], prec + 1, out);
            out += " -> ";
            print_rec(*n.children[1], prec, out);
            break;
        case FKind::Exists:
        case FKind::Forall:
            out += (n.kind == FKind::Exists ? "exists " : "forall ") + n.vars[0] + ". ";
            print_rec(*n.children[0], prec, out);
            break;
        case FKind::GuardedExists:
        case FKind::GuardedForall: {
            out += (n.kind == FKind::GuardedExists ? "exists " : "forall ") + n.vars[0] + " in N[" +
                   std::to_string(n.radius) + "](";
            for (std::size_t i = 0; i < n.anchors.size(); ++i) {
                if (i) out += ',';
                out += n.anchors[i];
            }
            out += "). ";
            print_rec(*n.children[0], prec, out);
            break;
        }
        case FKind::SetExists:
        case FKind::SetForall:
            out += (n.kind == FKind::SetExists ? "setexists " : "setforall ") + n.vars[0] + ". ";
            print_rec(*n.children[0], prec, out);
            break;
        case FKind::InSet:
            out += n.vars[0] + " in " + n.vars[1];
            break;
    }
    if (paren) out += ')';
}

void collect_all_vars(const FNode& n, std::set<std::string>& out) {
    for (const auto& v : n.vars) out.insert(v);
    for (const auto& a : n.anchors) out.insert(a);
    for (const auto& c : n.children) collect_all_vars(*c, out);
}

}  // namespace

std::string print_formula(const Formula& f) {
    std::string out;
    print_rec(f.node(), 0, out);
    return out;
}

Formula rename_free_var(const Formula& f, const std::string& from, const std::string& to) {
    const FNode& n = f.node();
    const auto& fv = n.free_vars;
    if (!std::binary_search(fv.begin(), fv.end(), from)) return f;
    auto replace = [&](const std::vector<std::string>& vars) {
        std::vector<std::string> out = vars;
        for (auto& v : out)
            if (v == from) v = to;
        return out;
    };
    switch (n.kind) {
        case FKind::Atom:
            return f_atom(n.rel, n.rel_name, replace(n.vars));
        case FKind::Equal:
            return f_equal(n.vars[0] == from ? to : n.vars[0], n.vars[1] == from ? to : n.vars[1]);
        case FKind::DistLE:
            return f_dist_le(n.vars[0] == from ? to : n.vars[0], n.vars[1] == from ? to : n.vars[1], n.radius);
        case FKind::DistGT:
            return f_dist_gt(n.vars[0] == from ? to : n.vars[0], n.vars[1] == from ? to : n.vars[1], n.radius);
        case FKind::InSet:
            return f_in_set(n.vars[0] == from ? to : n.vars[0], n.vars[1]);
        case FKind::Not:
            return f_not(rename_free_var(f.child(0), from, to));
        case FKind::And:
        case FKind::Or: {
            std::vector<Formula> parts;
            for (const auto& c : n.children) parts.push_back(rename_free_var(Formula(c), from, to));
            return n.kind == FKind::And ? f_and(std::move(parts)) : f_or(std::move(parts));
        }
        case FKind::Implies:
            return f_implies(rename_free_var(f.child(0), from, to), rename_free_var(f.child(1), from, to));
        case FKind::Exists:
        case FKind::Forall: {
            // from is free here, so it differs from the binder.
            Formula body = rename_free_var(f.child(0), from, to);
            return n.kind == FKind::Exists ? f_exists(n.vars[0], body) : f_forall(n.vars[0], body);
        }
        case FKind::GuardedExists:
        case FKind::GuardedForall: {
            Formula body = n.vars[0] == from ? f.child(0) : rename_free_var(f.child(0), from, to);
            auto anchors = replace(n.anchors);
            return n.kind == FKind::GuardedExists
                       ? f_guarded_exists(n.vars[0], std::move(anchors), n.radius, body)
                       : f_guarded_forall(n.vars[0], std::move(anchors), n.radius, body);
        }
        case FKind::SetExists:
        case FKind::SetForall: {
            Formula body = rename_free_var(f.child(0), from, to);
            return n.kind == FKind::SetExists ? f_set_exists(n.vars[0], body) : f_set_forall(n.vars[0], body);
        }
    }
    throw std::logic_error("rename_free_var: unreachable");
}

std::string fresh_var(const std::string& stem, const std::vector<Formula>& avoid) {
    std::set<std::string> used;
    for (const auto& f : avoid)
        if (f.valid()) collect_all_vars(f.node(), used);
    if (!used.count(stem)) return stem;
    for (int i = 0;; ++i) {
        std::string cand = stem + "_" + std::to_string(i);
        if (!used.count(cand)) return cand;
    }
}

}  // namespace gaifman
