#ifndef GAIFMAN_STRUCTURE_HPP
#define GAIFMAN_STRUCTURE_HPP

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gaifman/signature.hpp"

namespace gaifman {

using Tuple = std::vector<int>;

// Finite relational structure over a dense integer domain 0..n-1.
// Immutable after construction apart from the add() builder calls.
class Structure {
public:
    Structure() = default;
    Structure(Signature sig, int domain_size)
        : sig_(std::move(sig)), n_(domain_size), tables_(static_cast<std::size_t>(sig_.size())) {
        if (domain_size < 0) throw std::invalid_argument("negative domain size");
    }

    const Signature& signature() const { return sig_; }
    int domain_size() const { return n_; }

    void add(int rel, const Tuple& t) {
        check(rel, t);
        tables_[static_cast<std::size_t>(rel)].insert(t);
    }
    void add(const std::string& rel, const Tuple& t) {
        int i = sig_.index_of(rel);
        if (i < 0) throw std::invalid_argument("unknown relation: " + rel);
        add(i, t);
    }

    bool has(int rel, const Tuple& t) const {
        return tables_.at(static_cast<std::size_t>(rel)).count(t) > 0;
    }
    bool has(const std::string& rel, const Tuple& t) const {
        int i = sig_.index_of(rel);
        if (i < 0) throw std::invalid_argument("unknown relation: " + rel);
        return has(i, t);
    }

    const std::set<Tuple>& tuples(int rel) const { return tables_.at(static_cast<std::size_t>(rel)); }

    std::size_t tuple_count() const {
        std::size_t c = 0;
        for (const auto& t : tables_) c += t.size();
        return c;
    }

    friend bool operator==(const Structure&, const Structure&) = default;
    friend bool operator<(const Structure& a, const Structure& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.tables_ < b.tables_;
    }

private:
    void check(int rel, const Tuple& t) const {
        if (rel < 0 || rel >= sig_.size()) throw std::out_of_range("relation index");
        if (static_cast<int>(t.size()) != sig_.arity(rel))
            throw std::invalid_argument("arity mismatch for " + sig_.relation(rel).name);
        for (int e : t)
            if (e < 0 || e >= n_) throw std::out_of_range("element out of domain");
    }

    Signature sig_;
    int n_ = 0;
    std::vector<std::set<Tuple>> tables_;
};

// Plain undirected graph: symmetric irreflexive edge set over 0..n-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

    int vertex_count() const { return static_cast<int>(adj_.size()); }

    void add_edge(int a, int b) {
        if (a == b) throw std::invalid_argument("self loop");
        if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count())
            throw std::out_of_range("vertex out of range");
        adj_[static_cast<std::size_t>(a)].insert(b);
        adj_[static_cast<std::size_t>(b)].insert(a);
    }

    bool adjacent(int a, int b) const { return adj_.at(static_cast<std::size_t>(a)).count(b) > 0; }
    const std::set<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }

    std::size_t edge_count() const {
        std::size_t c = 0;
        for (const auto& s : adj_) c += s.size();
        return c / 2;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::set<int>> adj_;
};

inline constexpr int kUnreachable = 1 << 28;  // safely addable sentinel for "infinite" distance

struct Neighborhood {
    Structure structure;
    std::vector<int> new_of_old;  // -1 when the old element is absent
    std::vector<int> old_of_new;

    Tuple map_tuple(const Tuple& old_ids) const {
        Tuple out;
        out.reserve(old_ids.size());
        for (int e : old_ids) out.push_back(new_of_old.at(static_cast<std::size_t>(e)));
        return out;
    }
};

Graph gaifman_graph(const Structure& s);

// BFS distances from the vertices of `from` (multi-source); kUnreachable where no path.
std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& from);
std::vector<std::vector<int>> all_pairs_distances(const Graph& g);

int distance(const Structure& s, int a, int b);  // kUnreachable if disconnected

Neighborhood neighborhood(const Structure& s, const Tuple& anchors, int radius);
Structure induced_substructure(const Structure& s, const std::vector<int>& sorted_elements,
                               std::vector<int>* new_of_old = nullptr);

Structure disjoint_union(const Structure& a, const Structure& b);

std::vector<std::vector<int>> connected_components(const Structure& s);
std::vector<std::vector<int>> graph_components(const Graph& g);

// Injective map h with R(t) in `a` iff R(h(t)) in `b`, exhaustive backtracking,
// lexicographically first assignment; std::nullopt if none exists.
std::optional<std::vector<int>> find_induced_embedding(const Structure& a, const Structure& b);

// As above but report every embedding to `sink`; stop early when sink returns false.
void for_each_induced_embedding(const Structure& a, const Structure& b,
                                const std::function<bool(const std::vector<int>&)>& sink);

std::optional<std::vector<int>> isomorphic(const Structure& a, const Structure& b);

struct TreeDepthOptions {
    int vertex_cap = 16;
};
int tree_depth(const Graph& g, const TreeDepthOptions& opts = {});

}  // namespace gaifman

#endif
