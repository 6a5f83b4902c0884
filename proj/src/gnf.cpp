#include "gaifman/gnf.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gaifman/template_graph.hpp"
#include "gaifman/transform.hpp"

namespace gaifman {

namespace {

Formula pairwise_far(const std::vector<std::string>& vars, int dist_gt) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            parts.push_back(f_dist_gt(vars[i], vars[j], dist_gt));
    return f_and(std::move(parts));
}

Formula close_prefix(std::vector<std::string> vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = f_exists(*it, body);
    return body;
}

// Print with binder names canonicalized, so alpha-equivalent formulas key
// identically.
void canonical_print_rec(const FNode& n, std::map<std::string, std::string>& names, int& next,
                         std::string& out) {
    auto resolve = [&](const std::string& v) {
        auto it = names.find(v);
        return it == names.end() ? v : it->second;
    };
    switch (n.kind) {
        case FKind::Atom:
            out += n.rel_name + "(";
            for (const auto& v : n.vars) out += resolve(v) + ",";
            out += ")";
            return;
        case FKind::Equal:
        case FKind::InSet:
            out += (n.kind == FKind::Equal ? "=(" : "in(");
            out += resolve(n.vars[0]) + "," + resolve(n.vars[1]) + ")";
            return;
        case FKind::DistLE:
        case FKind::DistGT:
            out += (n.kind == FKind::DistLE ? "dle(" : "dgt(");
            out += resolve(n.vars[0]) + "," + resolve(n.vars[1]) + "," + std::to_string(n.radius) + ")";
            return;
        case FKind::Not:
        case FKind::And:
        case FKind::Or:
        case FKind::Implies: {
            out += n.kind == FKind::Not ? "!" : n.kind == FKind::And ? "&" : n.kind == FKind::Or ? "|" : ">";
            out += "[";
            for (const auto& c : n.children) {
                canonical_print_rec(*c, names, next, out);
                out += ";";
            }
            out += "]";
            return;
        }
        default: {
            out += n.kind == FKind::Exists ? "E" : n.kind == FKind::Forall ? "A"
                  : n.kind == FKind::GuardedExists ? "GE" : n.kind == FKind::GuardedForall ? "GA"
                  : n.kind == FKind::SetExists ? "SE" : "SA";
            if (n.kind == FKind::GuardedExists || n.kind == FKind::GuardedForall) {
                out += std::to_string(n.radius) + "(";
                for (const auto& a : n.anchors) out += resolve(a) + ",";
                out += ")";
            }
            std::string fresh = "b" + std::to_string(next++);
            auto saved = names.count(n.vars[0]) ? std::optional<std::string>(names[n.vars[0]])
                                                : std::nullopt;
            names[n.vars[0]] = fresh;
            out += fresh + ".";
            canonical_print_rec(*n.children[0], names, next, out);
            if (saved)
                names[n.vars[0]] = *saved;
            else
                names.erase(n.vars[0]);
            return;
        }
    }
}

std::string canonical_print(const Formula& f) {
    std::map<std::string, std::string> names;
    int next = 0;
    std::string out;
    canonical_print_rec(f.node(), names, next, out);
    return out;
}

void dedupe_formulas(std::vector<Formula>& fs) {
    std::set<std::string> seen;
    std::vector<Formula> out;
    for (const Formula& f : fs) {
        if (seen.insert(canonical_print(f)).second) out.push_back(f);
    }
    fs = std::move(out);
}

// Max guarded depth and max distance-atom radius of a matrix, for the typed
// split's separation requirement.
void reach_stats(const FNode& n, const std::map<std::string, int>& depth, int& max_depth,
                 int& max_dist) {
    switch (n.kind) {
        case FKind::DistLE:
        case FKind::DistGT:
            max_dist = std::max(max_dist, n.radius);
            return;
        case FKind::GuardedExists:
        case FKind::GuardedForall: {
            int base = 0;
            for (const auto& a : n.anchors) {
                auto it = depth.find(a);
                if (it != depth.end()) base = std::max(base, it->second);
            }
            std::map<std::string, int> inner = depth;
            inner[n.vars[0]] = base + n.radius;
            max_depth = std::max(max_depth, base + n.radius);
            reach_stats(*n.children[0], inner, max_depth, max_dist);
            return;
        }
        default:
            for (const auto& c : n.children) reach_stats(*c, depth, max_depth, max_dist);
            return;
    }
}

}  // namespace

Formula exists_scattered(int count, int sep, const Formula& psi, const std::string& var) {
    std::vector<std::string> vs;
    for (int i = 0; i < count; ++i) vs.push_back("_s" + std::to_string(i));
    std::vector<Formula> parts{pairwise_far(vs, 2 * sep)};
    for (const auto& v : vs) parts.push_back(rename_free_var(psi, var, v));
    return close_prefix(vs, f_and(std::move(parts)));
}

StageResult exloc_to_almost_basic(const Formula& f, const GnfOptions& opts) {
    ClassifyResult cls = classify(f);
    if (cls.cls > SentenceClass::ExistentialLocal)
        throw std::invalid_argument("exloc_to_almost_basic: input is not existential local");
    if (!opts.skip_caps && (cls.k > opts.k_cap || cls.r_full > opts.r_cap))
        throw std::invalid_argument("exloc_to_almost_basic: (k=" + std::to_string(cls.k) +
                                    ",r=" + std::to_string(cls.r_full) + ") exceeds caps (k<=" +
                                    std::to_string(opts.k_cap) + ",r<=" + std::to_string(opts.r_cap) +
                                    ")");
    int k = cls.k;
    int r = std::max(1, cls.r_full);  // 0-local formulas are 1-local
    Formula matrix = cls.full_matrix;
    const auto& xs = cls.vars;

    StageResult out;
    std::vector<std::pair<int, int>> window;  // (centers, radius)
    if (opts.full_range) {
        int top = r;
        for (int i = 0; i < k; ++i) top *= 4;
        for (int kp = 1; kp <= k; ++kp)
            for (int radius = r; radius <= top; ++radius) window.push_back({kp, radius});
    } else {
        // The cover recursion merges one center per radius bump: radius
        // r*4^i goes with exactly k-i centers.
        int radius = r;
        for (int i = 0; i < k; ++i) {
            window.push_back({k - i, radius});
            radius *= 4;
        }
    }

    std::vector<Formula> disjuncts;
    for (auto [kp, radius] : window) {
        int sep = 2 * (radius + r) + std::max(1, 2 * r);
        std::vector<std::string> centers;
        for (int i = 0; i < kp; ++i) centers.push_back("_b" + std::to_string(i));
        // Guard the original existential block inside the center balls.
        Formula guarded = matrix;
        for (auto it = xs.rbegin(); it != xs.rend(); ++it)
            guarded = f_guarded_exists(*it, centers, radius, guarded);
        Formula psi = close_prefix(centers, f_and({pairwise_far(centers, sep), guarded}));
        disjuncts.push_back(psi);
        out.trace.push_back("stage1: centers=" + std::to_string(kp) + " R=" +
                            std::to_string(radius) + " sep>" + std::to_string(sep));
    }
    dedupe_formulas(disjuncts);
    out.formula = disjuncts.size() == 1 ? disjuncts[0] : f_or(std::move(disjuncts));
    return out;
}

namespace {

// ---- Stage 2: typed split ------------------------------------------------

struct TypedLeaf {
    int type;       // -1 for constants
    bool constant;  // when type < 0
    Formula piece;  // free vars subset of {vars[type]} plus its own binders
};

struct LeafTree {
    bool leaf = false;
    bool conj = true;  // when !leaf: true = And, false = Or
    TypedLeaf value;
    std::vector<LeafTree> kids;

    static LeafTree mk_leaf(TypedLeaf l) {
        LeafTree t;
        t.leaf = true;
        t.value = std::move(l);
        return t;
    }
    static LeafTree mk(bool is_and, std::vector<LeafTree> kids) {
        LeafTree t;
        t.conj = is_and;
        t.kids = std::move(kids);
        return t;
    }
    static LeafTree constant(bool truth) {
        return mk(truth, {});  // empty And = true, empty Or = false
    }
};

using Clause = std::vector<TypedLeaf>;

constexpr std::size_t kComboCap = 4096;

void cross(std::vector<Clause>& acc, const std::vector<Clause>& more) {
    std::vector<Clause> out;
    for (const Clause& a : acc)
        for (const Clause& b : more) {
            Clause c = a;
            c.insert(c.end(), b.begin(), b.end());
            out.push_back(std::move(c));
            if (out.size() > kComboCap)
                throw std::runtime_error("almost_to_asymmetric: clause blowup beyond cap");
        }
    acc = std::move(out);
}

// DNF when `want_and_inside` (disjuncts of conjunctions), CNF otherwise.
std::vector<Clause> normalize(const LeafTree& t, bool want_and_inside) {
    if (t.leaf) return {{t.value}};
    bool distributes = t.conj != want_and_inside;
    if (!distributes) {
        // Same connective as the inner one: concatenate via cross product
        // (And inside DNF / Or inside CNF).
        std::vector<Clause> acc{{}};
        for (const LeafTree& kid : t.kids) cross(acc, normalize(kid, want_and_inside));
        return acc;
    }
    // Opposite connective: union of the kids' normal forms.
    std::vector<Clause> acc;
    for (const LeafTree& kid : t.kids) {
        auto sub = normalize(kid, want_and_inside);
        acc.insert(acc.end(), sub.begin(), sub.end());
        if (acc.size() > kComboCap)
            throw std::runtime_error("almost_to_asymmetric: clause blowup beyond cap");
    }
    if (t.kids.empty()) {
        // Empty And is true, empty Or is false.
        bool truth = t.conj;
        if (truth == want_and_inside) return {{}};  // neutral clause
        return {};                                  // absorbing: empty normal form
    }
    return acc;
}

class TypedSplit {
public:
    explicit TypedSplit(const std::vector<std::string>& vars) : vars_(vars) {}

    LeafTree run(const Formula& matrix) {
        std::map<std::string, int> rho;
        for (std::size_t i = 0; i < vars_.size(); ++i) rho[vars_[i]] = static_cast<int>(i);
        return walk(matrix, /*positive=*/true, rho);
    }

private:
    LeafTree literal(const Formula& f, bool positive, const std::map<std::string, int>& rho) {
        // Types of the element variables under rho.
        std::set<int> types;
        for (const auto& v : f.free_vars()) {
            auto it = rho.find(v);
            if (it == rho.end()) throw std::logic_error("typed split: unbound variable " + v);
            types.insert(it->second);
        }
        Formula lit = positive ? f : f_not(f);
        if (types.size() > 1) {
            // Mixed-type atoms are unsatisfiable across disjoint regions:
            // relations and equality fail, distance atoms exceed their radius.
            bool truth;
            switch (f.kind()) {
                case FKind::Atom:
                case FKind::Equal:
                case FKind::DistLE:
                    truth = !positive;
                    break;
                case FKind::DistGT:
                    truth = positive;
                    break;
                default:
                    throw std::logic_error("typed split: unexpected mixed literal");
            }
            return LeafTree::constant(truth);
        }
        if (types.empty()) throw std::logic_error("typed split: literal without variables");
        TypedLeaf leaf;
        leaf.type = *types.begin();
        leaf.constant = false;
        leaf.piece = lit;
        return LeafTree::mk_leaf(std::move(leaf));
    }

    LeafTree walk(const Formula& f, bool positive, std::map<std::string, int>& rho) {
        const FNode& n = f.node();
        switch (n.kind) {
            case FKind::Atom:
            case FKind::Equal:
            case FKind::DistLE:
            case FKind::DistGT:
                return literal(f, positive, rho);
            case FKind::Not:
                return walk(f.child(0), !positive, rho);
            case FKind::And:
            case FKind::Or: {
                bool conj = (n.kind == FKind::And) == positive;
                std::vector<LeafTree> kids;
                for (const auto& c : n.children) kids.push_back(walk(Formula(c), positive, rho));
                return LeafTree::mk(conj, std::move(kids));
            }
            case FKind::Implies: {
                std::vector<LeafTree> kids;
                kids.push_back(walk(f.child(0), !positive, rho));
                kids.push_back(walk(f.child(1), positive, rho));
                return LeafTree::mk(!positive, std::move(kids));
            }
            case FKind::GuardedExists:
            case FKind::GuardedForall: {
                bool exists = (n.kind == FKind::GuardedExists) == positive;
                // Split the multi-anchor guard by the anchors' types.
                std::map<int, std::vector<std::string>> anchors_by_type;
                for (const auto& a : n.anchors) {
                    auto it = rho.find(a);
                    if (it == rho.end()) throw std::logic_error("typed split: unbound anchor " + a);
                    anchors_by_type[it->second].push_back(a);
                }
                std::vector<LeafTree> branches;
                for (const auto& [type, anchors] : anchors_by_type) {
                    rho[n.vars[0]] = type;
                    LeafTree body = walk(f.child(0), positive, rho);
                    rho.erase(n.vars[0]);
                    branches.push_back(wrap_quantifier(body, exists, type, n.vars[0], anchors,
                                                       n.radius));
                }
                return LeafTree::mk(!exists, std::move(branches));
            }
            default:
                throw std::invalid_argument(
                    "almost_to_asymmetric: matrix contains an unguarded or MSO quantifier");
        }
    }

    // Push a guarded quantifier over the typed tree: distribute to the normal
    // form whose inner connective scopes with the quantifier, then wrap the
    // matching-type leaves of every clause.
    LeafTree wrap_quantifier(const LeafTree& body, bool exists, int type, const std::string& var,
                             const std::vector<std::string>& anchors, int radius) {
        auto clauses = normalize(body, /*want_and_inside=*/exists);
        std::vector<LeafTree> rebuilt;
        for (const Clause& clause : clauses) {
            std::vector<Formula> inside;
            std::vector<LeafTree> outside;
            for (const TypedLeaf& leaf : clause) {
                if (leaf.type == type)
                    inside.push_back(leaf.piece);
                else
                    outside.push_back(LeafTree::mk_leaf(leaf));
            }
            Formula wrapped_body = exists ? f_and(inside) : f_or(inside);
            Formula wrapped = exists ? f_guarded_exists(var, anchors, radius, wrapped_body)
                                     : f_guarded_forall(var, anchors, radius, wrapped_body);
            TypedLeaf lw;
            lw.type = type;
            lw.constant = false;
            lw.piece = wrapped;
            outside.push_back(LeafTree::mk_leaf(std::move(lw)));
            // DNF clauses conjoin; CNF clauses disjoin.
            rebuilt.push_back(LeafTree::mk(exists, std::move(outside)));
        }
        return LeafTree::mk(!exists, std::move(rebuilt));
    }

    const std::vector<std::string>& vars_;
};

}  // namespace

StageResult almost_to_asymmetric(const Formula& f, const GnfOptions&) {
    ClassifyResult cls = classify(f);
    if (cls.cls > SentenceClass::AlmostBasicLocal)
        throw std::invalid_argument("almost_to_asymmetric: input is not almost basic local");
    StageResult out;
    if (cls.cls <= SentenceClass::AsymmetricBasicLocal) {
        out.formula = f;
        out.trace.push_back("stage2: already asymmetric, passed through");
        return out;
    }
    int k = cls.k;
    // The typed relation split needs the center regions strictly separated:
    // cross-region values must falsify every atom.
    int max_depth = 0, max_dist = 0;
    std::map<std::string, int> depth0;
    for (const auto& v : cls.vars) depth0[v] = 0;
    reach_stats(cls.matrix.node(), depth0, max_depth, max_dist);
    int needed = 2 * max_depth + std::max(1, max_dist);
    if (k >= 2 && cls.sep < needed)
        throw std::invalid_argument("almost_to_asymmetric: separation " + std::to_string(cls.sep) +
                                    " below the typed-split requirement " + std::to_string(needed));

    TypedSplit split(cls.vars);
    LeafTree tree = split.run(cls.matrix);
    auto disjuncts_nf = normalize(tree, /*want_and_inside=*/true);

    std::vector<Formula> disjuncts;
    for (const Clause& clause : disjuncts_nf) {
        std::vector<std::vector<Formula>> per_type(static_cast<std::size_t>(k));
        for (const TypedLeaf& leaf : clause)
            per_type[static_cast<std::size_t>(leaf.type)].push_back(leaf.piece);
        // Canonical variable order: the distance block is symmetric, so the
        // pieces may be sorted; symmetric twins then deduplicate.
        std::vector<std::string> canon_vars;
        for (int m = 0; m < k; ++m) canon_vars.push_back("_v" + std::to_string(m));
        std::vector<Formula> pieces;
        for (int m = 0; m < k; ++m)
            pieces.push_back(rename_free_var(f_and(per_type[static_cast<std::size_t>(m)]),
                                             cls.vars[static_cast<std::size_t>(m)], "_vp"));
        std::sort(pieces.begin(), pieces.end(), [](const Formula& a, const Formula& b) {
            return canonical_print(a) < canonical_print(b);
        });
        std::vector<Formula> parts{pairwise_far(canon_vars, cls.sep)};
        for (int m = 0; m < k; ++m)
            parts.push_back(rename_free_var(pieces[static_cast<std::size_t>(m)], "_vp",
                                            canon_vars[static_cast<std::size_t>(m)]));
        disjuncts.push_back(close_prefix(canon_vars, f_and(std::move(parts))));
    }
    if (disjuncts.empty()) disjuncts.push_back(f_false());
    dedupe_formulas(disjuncts);
    out.formula = disjuncts.size() == 1 ? disjuncts[0] : f_or(std::move(disjuncts));
    out.trace.push_back("stage2: typed split into " + std::to_string(disjuncts.size()) +
                        " asymmetric disjuncts (sep " + std::to_string(cls.sep) + ")");
    return out;
}

Formula remove_variable(const Formula& f, int i) {
    ClassifyResult cls = classify(f);
    if (cls.cls > SentenceClass::AsymmetricBasicLocal)
        throw std::invalid_argument("remove_variable: input is not asymmetric basic local");
    if (i < 1 || i > cls.k) throw std::out_of_range("remove_variable: index out of range");
    if (cls.k == 1) return f_true();
    std::vector<std::string> vars;
    std::vector<Formula> parts;
    for (int m = 0; m < cls.k; ++m) {
        if (m == i - 1) continue;
        vars.push_back(cls.vars[static_cast<std::size_t>(m)]);
        parts.push_back(cls.psis[static_cast<std::size_t>(m)]);
    }
    std::vector<Formula> body{pairwise_far(vars, cls.sep)};
    body.insert(body.end(), parts.begin(), parts.end());
    return close_prefix(vars, f_and(std::move(body)));
}

StageResult asymmetric_to_basic(const Formula& f, const GnfOptions& opts) {
    ClassifyResult cls = classify(f);
    if (cls.cls > SentenceClass::AsymmetricBasicLocal)
        throw std::invalid_argument("asymmetric_to_basic: input is not asymmetric basic local");
    StageResult out;
    if (cls.cls == SentenceClass::BasicLocal) {
        out.formula = f;
        out.trace.push_back("stage3: already basic local, passed through");
        return out;
    }
    int k = cls.k;
    int r3 = cls.r;
    int sep = cls.sep;
    if (!opts.skip_caps && (k > opts.k_cap || r3 > opts.r_cap))
        throw std::invalid_argument("asymmetric_to_basic: (k=" + std::to_string(k) + ",r=" +
                                    std::to_string(r3) + ") exceeds caps (k<=" +
                                    std::to_string(opts.k_cap) + ",r<=" +
                                    std::to_string(opts.r_cap) + "); the template stage blows up");

    // Property list: structurally distinct per-variable pieces over "_p".
    std::vector<Formula> q;
    std::vector<int> var_colors;
    for (int m = 0; m < k; ++m) {
        Formula piece = rename_free_var(cls.psis[static_cast<std::size_t>(m)],
                                        cls.vars[static_cast<std::size_t>(m)], "_p");
        int found = -1;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (q[i] == piece) found = static_cast<int>(i);
        if (found < 0) {
            q.push_back(piece);
            found = static_cast<int>(q.size()) - 1;
        }
        var_colors.push_back(found);
    }

    std::vector<Formula> disjuncts;

    // Repetition branches: solve f/i recursively and demand k scattered
    // witnesses of psi_i.
    GnfOptions rec_opts = opts;
    rec_opts.skip_caps = true;
    for (int i = 1; i <= k; ++i) {
        StageResult rec = asymmetric_to_basic(remove_variable(f, i), rec_opts);
        for (const auto& line : rec.trace) out.trace.push_back("  " + line);
        Formula rep = exists_scattered(k, sep, q[static_cast<std::size_t>(var_colors[static_cast<std::size_t>(i - 1)])], "_p");
        disjuncts.push_back(f_and({rec.formula, rep}));
        out.trace.push_back("stage3: repetition branch for variable " + std::to_string(i));
    }

    // Template branches over the cover ladder.
    if (opts.probe.empty())
        throw std::invalid_argument(
            "asymmetric_to_basic: the template stage needs a probe corpus (--prune)");
    // The cover runs from radius 3*sep. Sentences are built at the cover
    // radius minus r3: the slack keeps the per-point formulas (whose color
    // tests reach r3 past the 3R-ball) within half of the 6R separation the
    // cover guarantees.
    std::vector<int> ladder;
    if (opts.full_range) {
        int top = 3 * sep;
        for (int i = 0; i < k * k; ++i) top *= 4;
        for (int radius = 3 * sep; radius <= top; ++radius) ladder.push_back(radius - r3);
    } else {
        int radius = 3 * sep;
        for (int i = 0; i < std::max(1, k * (k - 1)); ++i) {
            ladder.push_back(radius - r3);
            radius *= 4;
        }
    }

    // Scattered-point variables reused by every Theta disjunct; the theta and
    // pi trees are built once per variable and shared, so the evaluator's
    // memo table works across the whole combination.
    int scatter_budget = std::max(1, k * (k - 1));
    std::vector<std::string> scatter_vars;
    for (int i = 0; i < scatter_budget; ++i) scatter_vars.push_back("_s" + std::to_string(i));

    for (int big_r : ladder) {
        // Realized template graphs and per-point collections on the probe.
        std::vector<TemplateGraph> delta;
        std::set<std::string> delta_keys;
        std::vector<std::set<std::size_t>> realized_collections;
        std::set<std::string> collection_keys;

        std::vector<Formula> thetas;  // parallel to delta, built lazily below
        Formula pi = pi_q(opts.probe.front().signature(), big_r, r3, q);

        for (const Structure& p : opts.probe) {
            Evaluator ev(p, opts.eval);
            // Points of interest: satisfy at least one property.
            std::vector<int> w;
            for (int v = 0; v < p.domain_size(); ++v)
                for (const Formula& prop : q)
                    if (ev.eval(prop, {{"_p", v}})) {
                        w.push_back(v);
                        break;
                    }
            // All tuples of 1..k points of interest.
            for (int len = 1; len <= k; ++len) {
                std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
                if (w.empty()) break;
                while (true) {
                    Tuple t;
                    for (int a = 0; a < len; ++a) t.push_back(w[idx[static_cast<std::size_t>(a)]]);
                    TemplateGraph g = build_template_graph(ev, t, big_r, q);
                    std::string key = g.canonical_key();
                    if (delta_keys.insert(key).second) delta.push_back(std::move(g));
                    int pos = len - 1;
                    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == w.size() - 1) {
                        idx[static_cast<std::size_t>(pos)] = 0;
                        --pos;
                    }
                    if (pos < 0) break;
                    ++idx[static_cast<std::size_t>(pos)];
                }
            }
        }
        for (const TemplateGraph& g : delta) thetas.push_back(theta_g(g, q, big_r, r3));

        for (const Structure& p : opts.probe) {
            Evaluator ev(p, opts.eval);
            for (int v = 0; v < p.domain_size(); ++v) {
                std::set<std::size_t> coll;
                for (std::size_t gi = 0; gi < delta.size(); ++gi)
                    if (ev.eval(thetas[gi], {{"x", v}})) coll.insert(gi);
                std::string key;
                for (std::size_t gi : coll) key += std::to_string(gi) + ",";
                if (collection_keys.insert(key).second) realized_collections.push_back(coll);
            }
        }

        // Shared per-variable copies of pi and the theta literals.
        std::vector<Formula> pi_for;
        std::vector<std::vector<Formula>> theta_for, ntheta_for;
        for (const auto& v : scatter_vars) {
            pi_for.push_back(pi_q(opts.probe.front().signature(), big_r, r3, q, v));
            std::vector<Formula> th, nth;
            for (const TemplateGraph& g : delta) {
                Formula t = theta_g(g, q, big_r, r3, v);
                th.push_back(t);
                nth.push_back(f_not(t));
            }
            theta_for.push_back(std::move(th));
            ntheta_for.push_back(std::move(nth));
        }
        // Per (variable, collection) point formulas, shared across multisets.
        auto point_formula = [&](std::size_t var, std::size_t ci) {
            std::vector<Formula> point{pi_for[var]};
            for (std::size_t gi = 0; gi < delta.size(); ++gi) {
                if (realized_collections[ci].count(gi))
                    point.push_back(theta_for[var][gi]);
                else
                    point.push_back(ntheta_for[var][gi]);
            }
            return f_and(std::move(point));
        };
        std::map<std::pair<std::size_t, std::size_t>, Formula> point_cache;
        auto point_for = [&](std::size_t var, std::size_t ci) {
            auto key = std::make_pair(var, ci);
            auto it = point_cache.find(key);
            if (it == point_cache.end()) it = point_cache.emplace(key, point_formula(var, ci)).first;
            return it->second;
        };

        // Multisets over the realized collections, total size <= k(k-1).
        std::vector<std::vector<std::size_t>> multisets;  // indices into realized_collections
        std::vector<std::size_t> current;
        std::function<void(std::size_t, int)> build = [&](std::size_t from, int left) {
            if (!current.empty()) multisets.push_back(current);
            if (left == 0) return;
            for (std::size_t c = from; c < realized_collections.size(); ++c) {
                current.push_back(c);
                build(c, left - 1);
                current.pop_back();
            }
        };
        build(0, scatter_budget);

        int emitted = 0;
        for (const auto& m : multisets) {
            std::vector<std::vector<TemplateGraph>> graphs;
            for (std::size_t ci : m) {
                std::vector<TemplateGraph> s;
                for (std::size_t gi : realized_collections[ci]) s.push_back(delta[gi]);
                graphs.push_back(std::move(s));
            }
            if (!is_valid_multiset(graphs, var_colors, sep)) continue;
            // Theta_M: per distinct collection, at least multiplicity many
            // scattered points carrying exactly that theta pattern. Each
            // block draws its variables from the start of the shared pool, so
            // the theta subtrees are shared across blocks and multisets.
            std::map<std::size_t, int> mult;
            for (std::size_t ci : m) ++mult[ci];
            std::vector<Formula> blocks;
            for (const auto& [ci, count] : mult) {
                std::vector<Formula> parts;
                std::vector<std::string> vars;
                for (int j = 0; j < count; ++j) {
                    parts.push_back(point_for(static_cast<std::size_t>(j), ci));
                    vars.push_back(scatter_vars[static_cast<std::size_t>(j)]);
                }
                std::vector<Formula> seps;
                for (std::size_t a = 0; a < vars.size(); ++a)
                    for (std::size_t b = a + 1; b < vars.size(); ++b)
                        seps.push_back(f_dist_gt(vars[a], vars[b], 2 * (3 * big_r + r3)));
                Formula body = f_and({f_and(std::move(seps)), f_and(std::move(parts))});
                for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = f_exists(*it, body);
                blocks.push_back(body);
            }
            disjuncts.push_back(f_and(std::move(blocks)));
            ++emitted;
        }
        out.trace.push_back("stage3: R=" + std::to_string(big_r) + " |Delta|=" +
                            std::to_string(delta.size()) + " patterns=" +
                            std::to_string(realized_collections.size()) + " valid multisets=" +
                            std::to_string(emitted));
    }

    dedupe_formulas(disjuncts);
    out.formula = f_or(std::move(disjuncts));
    return out;
}

StageResult positive_gaifman(const Formula& f, const GnfOptions& opts) {
    ClassifyResult cls = classify(f);
    StageResult out;
    if (cls.cls == SentenceClass::BasicLocal ||
        cls.cls == SentenceClass::PositiveBasicLocalCombination) {
        out.formula = f;
        out.trace.push_back("pipeline: input already a positive basic-local combination");
        return out;
    }
    if (cls.cls == SentenceClass::Other)
        throw std::invalid_argument("positive_gaifman: input is not existential local");
    if (cls.k > opts.k_cap || cls.r_full > opts.r_cap)
        throw std::invalid_argument("positive_gaifman: (k=" + std::to_string(cls.k) + ",r=" +
                                    std::to_string(cls.r_full) + ") exceeds caps (k<=" +
                                    std::to_string(opts.k_cap) + ",r<=" +
                                    std::to_string(opts.r_cap) + ")");
    GnfOptions inner = opts;
    inner.skip_caps = true;

    std::vector<Formula> almost;
    if (cls.cls == SentenceClass::ExistentialLocal) {
        StageResult s1 = exloc_to_almost_basic(f, inner);
        out.trace = s1.trace;
        if (s1.formula.kind() == FKind::Or)
            for (const auto& c : s1.formula.children()) almost.emplace_back(c);
        else
            almost.push_back(s1.formula);
    } else {
        almost.push_back(f);
    }

    std::vector<Formula> basics;
    for (const Formula& a : almost) {
        StageResult s2 = almost_to_asymmetric(a, inner);
        for (const auto& line : s2.trace) out.trace.push_back(line);
        std::vector<Formula> asyms;
        if (s2.formula.kind() == FKind::Or)
            for (const auto& c : s2.formula.children()) asyms.emplace_back(c);
        else
            asyms.push_back(s2.formula);
        for (const Formula& sub : asyms) {
            if (is_false(sub)) continue;
            StageResult s3 = asymmetric_to_basic(sub, inner);
            for (const auto& line : s3.trace) out.trace.push_back(line);
            basics.push_back(s3.formula);
        }
    }
    dedupe_formulas(basics);
    out.formula = f_or(std::move(basics));
    return out;
}

}  // namespace gaifman
