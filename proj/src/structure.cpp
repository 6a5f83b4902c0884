#include "gaifman/structure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

namespace gaifman {

Graph gaifman_graph(const Structure& s) {
    Graph g(s.domain_size());
    for (int r = 0; r < s.signature().size(); ++r) {
        for (const Tuple& t : s.tuples(r)) {
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j]) g.add_edge(t[i], t[j]);
        }
    }
    return g;
}

std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& from) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), kUnreachable);
    std::deque<int> queue;
    for (int v : from) {
        if (dist[static_cast<std::size_t>(v)] == kUnreachable) {
            dist[static_cast<std::size_t>(v)] = 0;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(w)] == kUnreachable) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) out.push_back(bfs_distances(g, {v}));
    return out;
}

int distance(const Structure& s, int a, int b) {
    if (a < 0 || b < 0 || a >= s.domain_size() || b >= s.domain_size())
        throw std::out_of_range("distance: element out of domain");
    if (a == b) return 0;
    return bfs_distances(gaifman_graph(s), {a})[static_cast<std::size_t>(b)];
}

Structure induced_substructure(const Structure& s, const std::vector<int>& sorted_elements,
                               std::vector<int>* new_of_old_out) {
    std::vector<int> new_of_old(static_cast<std::size_t>(s.domain_size()), -1);
    for (std::size_t i = 0; i < sorted_elements.size(); ++i)
        new_of_old[static_cast<std::size_t>(sorted_elements[i])] = static_cast<int>(i);
    Structure out(s.signature(), static_cast<int>(sorted_elements.size()));
    for (int r = 0; r < s.signature().size(); ++r) {
        for (const Tuple& t : s.tuples(r)) {
            Tuple mapped;
            mapped.reserve(t.size());
            bool inside = true;
            for (int e : t) {
                int m = new_of_old[static_cast<std::size_t>(e)];
                if (m < 0) {
                    inside = false;
                    break;
                }
                mapped.push_back(m);
            }
            if (inside) out.add(r, mapped);
        }
    }
    if (new_of_old_out) *new_of_old_out = std::move(new_of_old);
    return out;
}

Neighborhood neighborhood(const Structure& s, const Tuple& anchors, int radius) {
    if (anchors.empty()) throw std::invalid_argument("neighborhood: empty anchor tuple");
    for (int a : anchors)
        if (a < 0 || a >= s.domain_size()) throw std::out_of_range("neighborhood: anchor out of domain");
    std::vector<int> keep;
    if (radius == 0) {
        keep.assign(anchors.begin(), anchors.end());
        std::sort(keep.begin(), keep.end());
        keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    } else {
        auto dist = bfs_distances(gaifman_graph(s), anchors);
        for (int v = 0; v < s.domain_size(); ++v)
            if (dist[static_cast<std::size_t>(v)] <= radius) keep.push_back(v);
    }
    Neighborhood out;
    out.structure = induced_substructure(s, keep, &out.new_of_old);
    out.old_of_new = keep;
    return out;
}

Structure disjoint_union(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()))
        throw std::invalid_argument("disjoint_union: signature mismatch");
    Structure out(a.signature(), a.domain_size() + b.domain_size());
    for (int r = 0; r < a.signature().size(); ++r) {
        for (const Tuple& t : a.tuples(r)) out.add(r, t);
        for (Tuple t : b.tuples(r)) {
            for (int& e : t) e += a.domain_size();
            out.add(r, t);
        }
    }
    return out;
}

std::vector<std::vector<int>> graph_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        std::vector<int> comp;
        std::deque<int> queue{v};
        seen[static_cast<std::size_t>(v)] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (int w : g.neighbors(u)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    queue.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<std::vector<int>> connected_components(const Structure& s) {
    return graph_components(gaifman_graph(s));
}

namespace {

// Shared backtracking over injections preserving all relations both ways on
// the assigned prefix. Assignments are tried in increasing target order, so
// the first embedding found is lexicographically least.
class EmbeddingSearch {
public:
    EmbeddingSearch(const Structure& a, const Structure& b,
                    const std::function<bool(const std::vector<int>&)>& sink)
        : a_(a), b_(b), sink_(sink), map_(static_cast<std::size_t>(a.domain_size()), -1),
          used_(static_cast<std::size_t>(b.domain_size()), false) {}

    void run() { extend(0); }

    bool stopped() const { return stopped_; }

private:
    bool consistent(int just_assigned) const {
        for (int r = 0; r < a_.signature().size(); ++r) {
            int arity = a_.signature().arity(r);
            // Tuples of `a` over assigned elements must map into `b`.
            for (const Tuple& t : a_.tuples(r)) {
                bool ready = false, all_assigned = true;
                for (int e : t) {
                    if (e == just_assigned) ready = true;
                    if (map_[static_cast<std::size_t>(e)] < 0) all_assigned = false;
                }
                if (!ready || !all_assigned) continue;
                Tuple mapped(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    mapped[i] = map_[static_cast<std::size_t>(t[i])];
                if (!b_.has(r, mapped)) return false;
            }
            // Tuples of `b` over image elements must pull back into `a`.
            for (const Tuple& t : b_.tuples(r)) {
                Tuple pre(t.size());
                bool ready = false, all_in_image = true;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    int p = preimage(t[i]);
                    if (p < 0) {
                        all_in_image = false;
                        break;
                    }
                    if (p == just_assigned) ready = true;
                    pre[i] = p;
                }
                if (!all_in_image || !ready) continue;
                if (!a_.has(r, pre)) return false;
                (void)arity;
            }
        }
        return true;
    }

    int preimage(int target) const {
        for (std::size_t i = 0; i < map_.size(); ++i)
            if (map_[i] == target) return static_cast<int>(i);
        return -1;
    }

    void extend(int next) {
        if (stopped_) return;
        if (next == a_.domain_size()) {
            if (!sink_(map_)) stopped_ = true;
            return;
        }
        for (int cand = 0; cand < b_.domain_size() && !stopped_; ++cand) {
            if (used_[static_cast<std::size_t>(cand)]) continue;
            map_[static_cast<std::size_t>(next)] = cand;
            used_[static_cast<std::size_t>(cand)] = true;
            if (consistent(next)) extend(next + 1);
            used_[static_cast<std::size_t>(cand)] = false;
            map_[static_cast<std::size_t>(next)] = -1;
        }
    }

    const Structure& a_;
    const Structure& b_;
    const std::function<bool(const std::vector<int>&)>& sink_;
    std::vector<int> map_;
    std::vector<bool> used_;
    bool stopped_ = false;
};

std::multiset<int> degree_multiset(const Structure& s) {
    Graph g = gaifman_graph(s);
    std::multiset<int> out;
    for (int v = 0; v < g.vertex_count(); ++v) out.insert(static_cast<int>(g.neighbors(v).size()));
    return out;
}

}  // namespace

void for_each_induced_embedding(const Structure& a, const Structure& b,
                                const std::function<bool(const std::vector<int>&)>& sink) {
    if (!(a.signature() == b.signature()))
        throw std::invalid_argument("find_induced_embedding: signature mismatch");
    if (a.domain_size() > b.domain_size()) return;
    EmbeddingSearch search(a, b, sink);
    search.run();
}

std::optional<std::vector<int>> find_induced_embedding(const Structure& a, const Structure& b) {
    std::optional<std::vector<int>> found;
    for_each_induced_embedding(a, b, [&](const std::vector<int>& h) {
        found = h;
        return false;
    });
    return found;
}

std::optional<std::vector<int>> isomorphic(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()))
        throw std::invalid_argument("isomorphic: signature mismatch");
    if (a.domain_size() != b.domain_size()) return std::nullopt;
    for (int r = 0; r < a.signature().size(); ++r)
        if (a.tuples(r).size() != b.tuples(r).size()) return std::nullopt;
    if (degree_multiset(a) != degree_multiset(b)) return std::nullopt;
    return find_induced_embedding(a, b);  // size-equal induced embedding is a bijection
}

namespace {

int tree_depth_rec(const Graph& g, unsigned mask, std::unordered_map<unsigned, int>& memo) {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;

    // Split into components within the mask.
    std::vector<int> verts;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (mask & (1u << v)) verts.push_back(v);

    std::vector<unsigned> comps;
    unsigned remaining = mask;
    while (remaining) {
        int start = __builtin_ctz(remaining);
        unsigned comp = 0;
        std::deque<int> queue{start};
        comp |= 1u << start;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(u)) {
                unsigned bit = 1u << w;
                if ((mask & bit) && !(comp & bit)) {
                    comp |= bit;
                    queue.push_back(w);
                }
            }
        }
        comps.push_back(comp);
        remaining &= ~comp;
    }

    int result;
    if (comps.size() > 1) {
        result = 0;
        for (unsigned c : comps) result = std::max(result, tree_depth_rec(g, c, memo));
    } else {
        result = static_cast<int>(verts.size());  // upper bound: eliminate in any order
        for (int v : verts) {
            int sub = tree_depth_rec(g, mask & ~(1u << v), memo);
            result = std::min(result, 1 + sub);
            if (result == 1) break;
        }
    }
    memo.emplace(mask, result);
    return result;
}

}  // namespace

int tree_depth(const Graph& g, const TreeDepthOptions& opts) {
    if (g.vertex_count() > opts.vertex_cap)
        throw std::invalid_argument("tree_depth: graph exceeds vertex cap " +
                                    std::to_string(opts.vertex_cap));
    if (g.vertex_count() == 0) return 0;
    std::unordered_map<unsigned, int> memo;
    unsigned full = g.vertex_count() == 32 ? ~0u : ((1u << g.vertex_count()) - 1u);
    return tree_depth_rec(g, full, memo);
}

}  // namespace gaifman
