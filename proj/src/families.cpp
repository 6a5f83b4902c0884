#include "gaifman/families.hpp"

namespace gaifman {

namespace {

void add_edge(Structure& s, int a, int b) {
    s.add(0, {a, b});
    s.add(0, {b, a});
}

}  // namespace

Structure gen_path(int n) {
    if (n < 1) throw std::invalid_argument("gen_path: n must be >= 1");
    Structure s(Signature::graph(), n);
    for (int i = 0; i + 1 < n; ++i) add_edge(s, i, i + 1);
    return s;
}

Structure gen_cycle(int n) {
    if (n < 3) throw std::invalid_argument("gen_cycle: n must be >= 3");
    Structure s(Signature::graph(), n);
    for (int i = 0; i < n; ++i) add_edge(s, i, (i + 1) % n);
    return s;
}

Structure gen_clique(int n) {
    if (n < 1) throw std::invalid_argument("gen_clique: n must be >= 1");
    Structure s(Signature::graph(), n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) add_edge(s, i, j);
    return s;
}

Structure gen_diamond(int n) {
    if (n < 3) throw std::invalid_argument("gen_diamond: n must be >= 3");
    // Layout: cycle 0..n-1, apexes n and n+1, then path internals.
    int total = n + 2 + 2 * n * (n - 1);
    Structure s(Signature::graph(), total);
    for (int i = 0; i < n; ++i) add_edge(s, i, (i + 1) % n);
    int next = n + 2;
    for (int apex : {n, n + 1}) {
        for (int c = 0; c < n; ++c) {
            // Path of length n from apex to cycle node c: n-1 internal vertices.
            int prev = apex;
            for (int t = 0; t < n - 1; ++t) {
                add_edge(s, prev, next);
                prev = next;
                ++next;
            }
            add_edge(s, prev, c);
        }
    }
    return s;
}

Structure gen_pointed(const Structure& s) {
    Graph g = gaifman_graph(s);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.neighbors(v).size() > 2)
            throw std::invalid_argument("gen_pointed: input has an element of degree > 2");
    if (!(s.signature() == Signature::graph()))
        throw std::invalid_argument("gen_pointed: expected the {E/2} signature");
    int n = s.domain_size();
    Structure out(Signature::graph(), n + 1);
    for (const Tuple& t : s.tuples(0)) out.add(0, t);
    for (int v = 0; v < n; ++v) add_edge(out, v, n);
    return out;
}

std::vector<std::vector<int>> gen_ord_chains(int m, int n) {
    std::vector<std::vector<int>> chains;
    int next = 0;
    for (int size = m; size <= n; ++size) {
        std::vector<int> chain;
        for (int i = 0; i < size; ++i) chain.push_back(next++);
        chains.push_back(std::move(chain));
    }
    return chains;
}

namespace {

Structure gen_ord_over(const Signature& sig, int m, int n) {
    if (m < 2 || m > n) throw std::invalid_argument("gen_ord: need 2 <= m <= n");
    auto chains = gen_ord_chains(m, n);
    int total = chains.back().back() + 1;
    Structure s(sig, total);
    int leq = sig.index_of("leq"), succ = sig.index_of("S"), e = sig.index_of("E");
    for (std::size_t c = 0; c < chains.size(); ++c) {
        const auto& chain = chains[c];
        for (std::size_t i = 0; i < chain.size(); ++i)
            for (std::size_t j = i; j < chain.size(); ++j) s.add(leq, {chain[i], chain[j]});
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) s.add(succ, {chain[i], chain[i + 1]});
        if (c + 1 < chains.size()) {
            const auto& nextc = chains[c + 1];
            s.add(succ, {chain.back(), nextc.front()});
            // E(a, b) whenever b <= a as integers (1-based positions).
            for (std::size_t a = 0; a < chain.size(); ++a)
                for (std::size_t b = 0; b <= a && b < nextc.size(); ++b)
                    s.add(e, {chain[a], nextc[b]});
        }
    }
    return s;
}

}  // namespace

Structure gen_ord(int m, int n) { return gen_ord_over(Signature::ord(), m, n); }
Structure gen_ord_b(int m, int n) { return gen_ord_over(Signature::ord_b(), m, n); }

Structure with_b_predicate(const Structure& s) {
    if (!(s.signature() == Signature::ord()))
        throw std::invalid_argument("with_b_predicate: expected the {leq,S,E} signature");
    Structure out(Signature::ord_b(), s.domain_size());
    for (int r = 0; r < 3; ++r)
        for (const Tuple& t : s.tuples(r)) out.add(r, t);
    return out;
}

Structure ord_reduct(const Structure& s) {
    Structure out(Signature::ord(), s.domain_size());
    for (const char* name : {"leq", "S", "E"}) {
        int src = s.signature().index_of(name);
        if (src < 0) throw std::invalid_argument("ord_reduct: missing relation " + std::string(name));
        for (const Tuple& t : s.tuples(src)) out.add(name, t);
    }
    return out;
}

}  // namespace gaifman
