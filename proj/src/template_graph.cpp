#include "gaifman/template_graph.hpp"

#include <algorithm>
#include <numeric>

#include "gaifman/transform.hpp"

namespace gaifman {

std::string TemplateGraph::canonical_key() const {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string key = std::to_string(n) + ":";
        for (int v = 0; v < n; ++v)
            key += std::to_string(colors[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])]) + ",";
        key += "|";
        std::map<std::pair<int, int>, int> mapped;
        for (const auto& [e, h] : edges) {
            int u = 0, v = 0;
            for (int i = 0; i < n; ++i) {
                if (perm[static_cast<std::size_t>(i)] == e.first) u = i;
                if (perm[static_cast<std::size_t>(i)] == e.second) v = i;
            }
            mapped[{std::min(u, v), std::max(u, v)}] = h;
        }
        for (const auto& [e, h] : mapped)
            key += std::to_string(e.first) + "-" + std::to_string(e.second) + ":" +
                   std::to_string(h) + ";";
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<std::vector<int>> TemplateGraph::weighted_distances() const {
    std::vector<std::vector<int>> d(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), kUnreachable));
    for (int v = 0; v < n; ++v) d[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 0;
    for (const auto& [e, h] : edges) {
        d[static_cast<std::size_t>(e.first)][static_cast<std::size_t>(e.second)] = h;
        d[static_cast<std::size_t>(e.second)][static_cast<std::size_t>(e.first)] = h;
    }
    for (int m = 0; m < n; ++m)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    std::min(d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)],
                             d[static_cast<std::size_t>(a)][static_cast<std::size_t>(m)] +
                                 d[static_cast<std::size_t>(m)][static_cast<std::size_t>(b)]);
    return d;
}

bool tg_leq(const TemplateGraph& g, const TemplateGraph& g2) {
    if (g.n != g2.n || g.edges.size() != g2.edges.size()) return false;
    std::vector<int> perm(static_cast<std::size_t>(g.n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < g.n && ok; ++v) {
            std::uint32_t cv = g.colors[static_cast<std::size_t>(v)];
            std::uint32_t cw = g2.colors[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])];
            if ((cv & cw) != cv) ok = false;
        }
        for (const auto& [e, h] : g.edges) {
            if (!ok) break;
            int u = perm[static_cast<std::size_t>(e.first)];
            int v = perm[static_cast<std::size_t>(e.second)];
            auto it = g2.edges.find({std::min(u, v), std::max(u, v)});
            if (it == g2.edges.end() || it->second != h) ok = false;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

TemplateGraph tg_union(const TemplateGraph& a, const TemplateGraph& b) {
    TemplateGraph out;
    out.n = a.n + b.n;
    out.colors = a.colors;
    out.colors.insert(out.colors.end(), b.colors.begin(), b.colors.end());
    out.edges = a.edges;
    for (const auto& [e, h] : b.edges) out.edges[{e.first + a.n, e.second + a.n}] = h;
    return out;
}

TemplateGraph build_template_graph(Evaluator& ev, const Tuple& points, int radius,
                                   const std::vector<Formula>& q, const std::string& q_var) {
    Tuple distinct;
    for (int p : points)
        if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);

    TemplateGraph g;
    g.n = static_cast<int>(distinct.size());
    for (int p : distinct) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (ev.eval(q[i], {{q_var, p}})) mask |= 1u << i;
        if (mask == 0)
            throw std::invalid_argument("build_template_graph: point " + std::to_string(p) +
                                        " satisfies no property");
        g.colors.push_back(mask);
    }
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            int d = ev.dist(distinct[static_cast<std::size_t>(u)], distinct[static_cast<std::size_t>(v)]);
            if (d <= radius) g.edges[{u, v}] = d;
        }
    return g;
}

Formula theta_g(const TemplateGraph& g, const std::vector<Formula>& q, int big_radius,
                int small_radius, const std::string& x) {
    if (g.n == 0) return f_true();
    std::vector<std::string> vs;
    for (int v = 0; v < g.n; ++v) vs.push_back("_t" + std::to_string(v));
    std::vector<Formula> body;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            auto it = g.edges.find({u, v});
            if (it != g.edges.end()) {
                body.push_back(f_dist_le(vs[static_cast<std::size_t>(u)],
                                         vs[static_cast<std::size_t>(v)], it->second));
                if (it->second > 0)
                    body.push_back(f_dist_gt(vs[static_cast<std::size_t>(u)],
                                             vs[static_cast<std::size_t>(v)], it->second - 1));
            } else {
                body.push_back(f_dist_gt(vs[static_cast<std::size_t>(u)],
                                         vs[static_cast<std::size_t>(v)], big_radius));
            }
        }
    for (int v = 0; v < g.n; ++v)
        for (std::size_t i = 0; i < q.size(); ++i)
            if (g.colors[static_cast<std::size_t>(v)] & (1u << i))
                body.push_back(rename_free_var(q[i], q[i].free_vars().empty() ? "_p" : q[i].free_vars()[0],
                                               vs[static_cast<std::size_t>(v)]));
    // Containment of each point's r-ball in the R-ball of x.
    for (int v = 0; v < g.n; ++v)
        body.push_back(f_guarded_forall("_u", {vs[static_cast<std::size_t>(v)]}, small_radius,
                                        f_dist_le("_u", x, big_radius)));
    Formula inner = f_and(std::move(body));
    for (int v = g.n - 1; v >= 0; --v)
        inner = f_guarded_exists(vs[static_cast<std::size_t>(v)], {x}, big_radius, inner);
    return inner;
}

Formula pi_q(const Signature& sig, int big_radius, int small_radius,
             const std::vector<Formula>& q, const std::string& x) {
    std::vector<Formula> any;
    for (const auto& p : q)
        any.push_back(rename_free_var(p, p.free_vars().empty() ? "_p" : p.free_vars()[0], "_y"));
    // N_r(y) is contained in N_R(x) iff y itself is within R and no element
    // just outside N_R(x) is chain-reachable from y in r steps; such a
    // witness always exists within N[R+1](x), so the quantifier may be
    // anchored at x without losing violations.
    int counter = 0;
    Formula escape = distance_chain_le("_y", "_w", small_radius, sig, {x},
                                       big_radius + small_radius, &counter);
    Formula containment = f_and(
        {f_dist_le("_y", x, big_radius),
         f_guarded_forall("_w", {x}, big_radius + small_radius,
                          f_not(f_and({escape, f_dist_gt("_w", x, big_radius)})))});
    return f_guarded_forall("_y", {x}, 3 * big_radius,
                            f_implies(f_or(std::move(any)), containment));
}

std::vector<TemplateGraph> obtainable(const std::vector<std::vector<TemplateGraph>>& multiset) {
    std::vector<TemplateGraph> result;
    std::vector<std::string> seen;
    auto push = [&](const TemplateGraph& g) {
        std::string key = g.canonical_key();
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
            seen.push_back(key);
            result.push_back(g);
        }
    };
    for (std::size_t i = 0; i < multiset.size(); ++i) {
        // Obt({S} + M) = Obt(M) ∪ S ∪ {g ⊎ g' : g ∈ S, g' ∈ Obt(M)}.
        std::vector<TemplateGraph> previous = result;
        for (const TemplateGraph& g : multiset[i]) {
            push(g);
            for (const TemplateGraph& g2 : previous) push(tg_union(g, g2));
        }
    }
    return result;
}

bool is_valid_multiset(const std::vector<std::vector<TemplateGraph>>& multiset,
                       const std::vector<int>& var_colors, int threshold) {
    int k = static_cast<int>(var_colors.size());
    for (const TemplateGraph& g : obtainable(multiset)) {
        if (g.n < 1) continue;
        auto dist = g.weighted_distances();
        // Distance > threshold >= 0 forces the chosen vertices distinct.
        std::vector<int> pick(static_cast<std::size_t>(k), 0);
        while (true) {
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                int v = pick[static_cast<std::size_t>(i)];
                if (!(g.colors[static_cast<std::size_t>(v)] &
                      (1u << var_colors[static_cast<std::size_t>(i)])))
                    ok = false;
                for (int j = 0; j < i && ok; ++j)
                    if (dist[static_cast<std::size_t>(v)]
                            [static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])] <= threshold)
                        ok = false;
            }
            if (ok) return true;
            int pos = k - 1;
            while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == g.n - 1) {
                pick[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++pick[static_cast<std::size_t>(pos)];
        }
    }
    return false;
}

}  // namespace gaifman
