#include "gaifman/local_type.hpp"

#include <algorithm>
#include <functional>

namespace gaifman {

namespace {

// Position-based atomic diagram of the tuple within `n`: equality bits for
// position pairs, then one membership bit per relation per position tuple,
// in a fixed decodable order.
std::string diagram_of(const Structure& n, const Tuple& t) {
    std::string out;
    int m = static_cast<int>(t.size());
    for (int p = 0; p < m; ++p)
        for (int p2 = p + 1; p2 < m; ++p2) out += (t[p] == t[p2]) ? '1' : '0';
    for (int r = 0; r < n.signature().size(); ++r) {
        int arity = n.signature().arity(r);
        Tuple probe(static_cast<std::size_t>(arity));
        std::vector<int> idx(static_cast<std::size_t>(arity), 0);
        while (true) {
            for (int a = 0; a < arity; ++a)
                probe[static_cast<std::size_t>(a)] = t[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
            out += n.has(r, probe) ? '1' : '0';
            int pos = arity - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - 1) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
        }
    }
    return out;
}

// Membership bits for tuple entries in each set mask (MSO state).
std::string membership_bits(const Tuple& t, const std::vector<std::uint64_t>& sets) {
    std::string out;
    for (std::uint64_t mask : sets)
        for (int e : t) out += ((mask >> e) & 1) ? '1' : '0';
    return out;
}

std::shared_ptr<const TypeTree> make_tree(std::string diagram,
                                          std::vector<std::shared_ptr<const TypeTree>> children,
                                          std::vector<std::shared_ptr<const TypeTree>> set_children) {
    auto sort_dedup = [](std::vector<std::shared_ptr<const TypeTree>>& v) {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a->digest < b->digest; });
        v.erase(std::unique(v.begin(), v.end(),
                            [](const auto& a, const auto& b) { return a->digest == b->digest; }),
                v.end());
    };
    sort_dedup(children);
    sort_dedup(set_children);
    auto tree = std::make_shared<TypeTree>();
    tree->diagram = std::move(diagram);
    tree->children = std::move(children);
    tree->set_children = std::move(set_children);
    std::string digest = "(" + tree->diagram;
    if (!tree->children.empty() || !tree->set_children.empty()) {
        digest += ";";
        for (std::size_t i = 0; i < tree->children.size(); ++i) {
            if (i) digest += ',';
            digest += tree->children[i]->digest;
        }
        if (!tree->set_children.empty()) {
            digest += ";";
            for (std::size_t i = 0; i < tree->set_children.size(); ++i) {
                if (i) digest += ',';
                digest += tree->set_children[i]->digest;
            }
        }
    }
    digest += ")";
    tree->digest = std::move(digest);
    return tree;
}

std::shared_ptr<const TypeTree> fo_tree(const Structure& n, Tuple& t, int q) {
    std::string diagram = diagram_of(n, t);
    std::vector<std::shared_ptr<const TypeTree>> children;
    if (q > 0) {
        children.reserve(static_cast<std::size_t>(n.domain_size()));
        for (int c = 0; c < n.domain_size(); ++c) {
            t.push_back(c);
            children.push_back(fo_tree(n, t, q - 1));
            t.pop_back();
        }
    }
    return make_tree(std::move(diagram), std::move(children), {});
}

std::shared_ptr<const TypeTree> mso_tree(const Structure& n, Tuple& t,
                                         std::vector<std::uint64_t>& sets, int q) {
    std::string diagram = diagram_of(n, t) + "|" + membership_bits(t, sets);
    std::vector<std::shared_ptr<const TypeTree>> children, set_children;
    if (q > 0) {
        for (int c = 0; c < n.domain_size(); ++c) {
            t.push_back(c);
            children.push_back(mso_tree(n, t, sets, q - 1));
            t.pop_back();
        }
        std::uint64_t limit = 1ull << n.domain_size();
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            sets.push_back(mask);
            set_children.push_back(mso_tree(n, t, sets, q - 1));
            sets.pop_back();
        }
    }
    return make_tree(std::move(diagram), std::move(children), std::move(set_children));
}

}  // namespace

LocalType local_type(const Structure& s, const Tuple& anchors, int r, int q) {
    if (anchors.empty()) throw std::invalid_argument("local_type: empty tuple");
    Neighborhood nb = neighborhood(s, anchors, r);
    Tuple t = nb.map_tuple(anchors);
    LocalType out;
    out.r = r;
    out.q = q;
    out.k = static_cast<int>(anchors.size());
    out.tree = fo_tree(nb.structure, t, q);
    return out;
}

LocalType mso_local_type(const Structure& s, const Tuple& anchors, int r, int q,
                         const LocalTypeOptions& opts) {
    if (anchors.empty()) throw std::invalid_argument("mso_local_type: empty tuple");
    Neighborhood nb = neighborhood(s, anchors, r);
    if (nb.structure.domain_size() > opts.mso_cap)
        throw std::runtime_error("mso_local_type: neighborhood size " +
                                 std::to_string(nb.structure.domain_size()) + " exceeds cap " +
                                 std::to_string(opts.mso_cap));
    Tuple t = nb.map_tuple(anchors);
    std::vector<std::uint64_t> sets;
    LocalType out;
    out.r = r;
    out.q = q;
    out.k = static_cast<int>(anchors.size());
    out.tree = mso_tree(nb.structure, t, sets, q);
    return out;
}

namespace {

template <typename TypeFn>
Specter specter_impl(const Structure& s, int k, const TypeFn& type_of) {
    if (k < 1) throw std::invalid_argument("specter: k must be >= 1");
    Specter out;
    if (s.domain_size() == 0) return out;
    Tuple t(static_cast<std::size_t>(k), 0);
    while (true) {
        LocalType ty = type_of(t);
        out.emplace(ty.digest(), std::move(ty));
        int pos = k - 1;
        while (pos >= 0 && t[static_cast<std::size_t>(pos)] == s.domain_size() - 1) {
            t[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++t[static_cast<std::size_t>(pos)];
    }
    return out;
}

}  // namespace

Specter specter(const Structure& s, int r, int q, int k) {
    return specter_impl(s, k, [&](const Tuple& t) { return local_type(s, t, r, q); });
}

Specter mso_specter(const Structure& s, int r, int q, int k, const LocalTypeOptions& opts) {
    return specter_impl(s, k, [&](const Tuple& t) { return mso_local_type(s, t, r, q, opts); });
}

bool preorder_leq(const Structure& a, const Structure& b, int r, int q, int k) {
    if (!(a.signature() == b.signature()))
        throw std::invalid_argument("preorder_leq: signature mismatch");
    Specter sa = specter(a, r, q, k);
    Specter sb = specter(b, r, q, k);
    for (const auto& [digest, ty] : sa)
        if (!sb.count(digest)) return false;
    return true;
}

RefinementReport refinement_check(const Structure& a, const Structure& b, int r1, int q1, int k1,
                                  int r2, int q2, int k2) {
    if (r1 > r2 || q1 > q2 || k1 > k2)
        throw std::invalid_argument("refinement_check: first parameters must be componentwise <=");
    RefinementReport rep;
    bool big = preorder_leq(a, b, r2, q2, k2);
    bool small = preorder_leq(a, b, r1, q1, k1);
    if (big && !small) {
        rep.consistent = false;
        rep.detail = "leq holds at (" + std::to_string(r2) + "," + std::to_string(q2) + "," +
                     std::to_string(k2) + ") but fails at (" + std::to_string(r1) + "," +
                     std::to_string(q1) + "," + std::to_string(k1) + ")";
    }
    return rep;
}

std::optional<Structure> find_disjoint_union_decomposition(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()))
        throw std::invalid_argument("decomposition: signature mismatch");
    Graph gb = gaifman_graph(b);
    std::optional<Structure> result;
    for_each_induced_embedding(a, b, [&](const std::vector<int>& h) {
        std::vector<bool> in_image(static_cast<std::size_t>(b.domain_size()), false);
        for (int v : h) in_image[static_cast<std::size_t>(v)] = true;
        for (int v = 0; v < b.domain_size(); ++v)
            for (int w : gb.neighbors(v))
                if (in_image[static_cast<std::size_t>(v)] != in_image[static_cast<std::size_t>(w)])
                    return true;  // crossing edge: keep searching
        std::vector<int> rest;
        for (int v = 0; v < b.domain_size(); ++v)
            if (!in_image[static_cast<std::size_t>(v)]) rest.push_back(v);
        result = induced_substructure(b, rest);
        return false;
    });
    return result;
}

bool extension_leq(const Structure& a, const Structure& b) {
    return find_induced_embedding(a, b).has_value();
}

namespace {

// Decode a diagram back into literals over the given variables.
Formula diagram_formula(const std::string& diagram, const Signature& sig,
                        const std::vector<std::string>& vars) {
    std::vector<Formula> lits;
    int m = static_cast<int>(vars.size());
    std::size_t bit = 0;
    for (int p = 0; p < m; ++p) {
        for (int p2 = p + 1; p2 < m; ++p2) {
            Formula eq = f_equal(vars[static_cast<std::size_t>(p)], vars[static_cast<std::size_t>(p2)]);
            lits.push_back(diagram[bit] == '1' ? eq : f_not(eq));
            ++bit;
        }
    }
    for (int r = 0; r < sig.size(); ++r) {
        int arity = sig.arity(r);
        std::vector<int> idx(static_cast<std::size_t>(arity), 0);
        while (true) {
            std::vector<std::string> args;
            args.reserve(static_cast<std::size_t>(arity));
            for (int a = 0; a < arity; ++a)
                args.push_back(vars[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])]);
            Formula atom = f_atom(r, sig.relation(r).name, std::move(args));
            lits.push_back(diagram[bit] == '1' ? atom : f_not(atom));
            ++bit;
            int pos = arity - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - 1) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
        }
    }
    return f_and(std::move(lits));
}

Formula hintikka(const TypeTree& tree, const Signature& sig, std::vector<std::string> tuple_vars,
                 const std::vector<std::string>& anchor_vars, int r, int depth) {
    Formula diag = diagram_formula(tree.diagram, sig, tuple_vars);
    if (tree.children.empty()) return diag;
    std::string y = "_h" + std::to_string(depth);
    std::vector<std::string> extended = tuple_vars;
    extended.push_back(y);
    std::vector<Formula> parts{diag};
    std::vector<Formula> some;
    for (const auto& child : tree.children) {
        Formula sub = hintikka(*child, sig, extended, anchor_vars, r, depth + 1);
        parts.push_back(f_guarded_exists(y, anchor_vars, r, sub));
        some.push_back(sub);
    }
    parts.push_back(f_guarded_forall(y, anchor_vars, r, f_or(std::move(some))));
    return f_and(std::move(parts));
}

}  // namespace

Formula type_formula(const LocalType& type, const Signature& sig,
                     const std::vector<std::string>& vars) {
    if (static_cast<int>(vars.size()) != type.k)
        throw std::invalid_argument("type_formula: variable count differs from type arity");
    if (!type.tree->set_children.empty())
        throw std::invalid_argument("type_formula: MSO types have no characteristic FO formula here");
    return hintikka(*type.tree, sig, vars, vars, type.r, 0);
}

}  // namespace gaifman
