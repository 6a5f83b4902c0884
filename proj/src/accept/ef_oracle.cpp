#include "accept/ef_oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace gaifman::accept {

namespace {

// Own ball extraction: plain BFS over co-occurrence adjacency.
struct Ball {
    Structure structure;
    Tuple tuple;
};

Ball extract_ball(const Structure& s, const Tuple& t, int radius) {
    int n = s.domain_size();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int r = 0; r < s.signature().size(); ++r)
        for (const Tuple& tu : s.tuples(r))
            for (int a : tu)
                for (int b : tu)
                    if (a != b) adj[static_cast<std::size_t>(a)].push_back(b);
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::deque<int> queue;
    for (int v : t)
        if (dist[static_cast<std::size_t>(v)] < 0) {
            dist[static_cast<std::size_t>(v)] = 0;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (dist[static_cast<std::size_t>(v)] == radius) continue;
        for (int w : adj[static_cast<std::size_t>(v)])
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
    }
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
        if (dist[static_cast<std::size_t>(v)] >= 0) keep.push_back(v);
    std::vector<int> new_of_old(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < keep.size(); ++i)
        new_of_old[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);

    Ball out;
    out.structure = Structure(s.signature(), static_cast<int>(keep.size()));
    for (int r = 0; r < s.signature().size(); ++r)
        for (const Tuple& tu : s.tuples(r)) {
            Tuple mapped;
            bool inside = true;
            for (int e : tu) {
                int m = new_of_old[static_cast<std::size_t>(e)];
                if (m < 0) {
                    inside = false;
                    break;
                }
                mapped.push_back(m);
            }
            if (inside) out.structure.add(r, mapped);
        }
    for (int v : t) out.tuple.push_back(new_of_old[static_cast<std::size_t>(v)]);
    return out;
}

// Position-based facts about the played tuple: equalities and relation
// memberships, as a comparable string.
std::string position_facts(const Structure& n, const Tuple& t) {
    std::string out;
    int m = static_cast<int>(t.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            out += (t[static_cast<std::size_t>(i)] == t[static_cast<std::size_t>(j)]) ? '1' : '0';
    for (int r = 0; r < n.signature().size(); ++r) {
        int arity = n.signature().arity(r);
        std::vector<int> idx(static_cast<std::size_t>(arity), 0);
        while (true) {
            Tuple probe;
            for (int p = 0; p < arity; ++p)
                probe.push_back(t[static_cast<std::size_t>(idx[static_cast<std::size_t>(p)])]);
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

bool partial_iso(const Structure& n1, const Tuple& t1, const Structure& n2, const Tuple& t2) {
    return position_facts(n1, t1) == position_facts(n2, t2);
}

// The q-round game on fixed boards, memoized on positions.
struct GameMemo {
    std::map<std::pair<Tuple, Tuple>, bool> seen[8];
};

bool game(const Structure& n1, Tuple& t1, const Structure& n2, Tuple& t2, int rank,
          GameMemo& memo) {
    if (!partial_iso(n1, t1, n2, t2)) return false;
    if (rank == 0) return true;
    auto key = std::make_pair(t1, t2);
    auto& table = memo.seen[rank];
    auto it = table.find(key);
    if (it != table.end()) return it->second;
    bool ok = true;
    for (int c = 0; c < n1.domain_size() && ok; ++c) {
        bool matched = false;
        for (int d = 0; d < n2.domain_size() && !matched; ++d) {
            t1.push_back(c);
            t2.push_back(d);
            matched = game(n1, t1, n2, t2, rank - 1, memo);
            t1.pop_back();
            t2.pop_back();
        }
        ok = matched;
    }
    for (int d = 0; d < n2.domain_size() && ok; ++d) {
        bool matched = false;
        for (int c = 0; c < n1.domain_size() && !matched; ++c) {
            t1.push_back(c);
            t2.push_back(d);
            matched = game(n1, t1, n2, t2, rank - 1, memo);
            t1.pop_back();
            t2.pop_back();
        }
        ok = matched;
    }
    table.emplace(std::move(key), ok);
    return ok;
}

bool play(const Structure& n1, const Tuple& t1, const Structure& n2, const Tuple& t2, int rank) {
    if (rank > 7) throw std::invalid_argument("ef oracle: rank above the memo depth");
    Tuple a = t1, b = t2;
    GameMemo memo;
    return game(n1, a, n2, b, rank, memo);
}

// Canonical labeled form of a small pointed ball: minimum over vertex
// permutations of the (tables, tuple) serialization.
std::string canonical_pointed(const Structure& s, const Tuple& t) {
    int n = s.domain_size();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string key;
        for (int v : t) key += std::to_string(perm[static_cast<std::size_t>(v)]) + ".";
        key += "#";
        for (int r = 0; r < s.signature().size(); ++r) {
            std::set<Tuple> mapped;
            for (const Tuple& tu : s.tuples(r)) {
                Tuple m;
                for (int e : tu) m.push_back(perm[static_cast<std::size_t>(e)]);
                mapped.insert(std::move(m));
            }
            key += "|";
            for (const Tuple& tu : mapped) {
                for (int e : tu) key += std::to_string(e) + ",";
                key += ";";
            }
        }
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::string labeled_key(const Structure& s, const Tuple& t) {
    std::string key;
    for (int v : t) key += std::to_string(v) + ".";
    key += "#" + std::to_string(s.domain_size());
    for (int r = 0; r < s.signature().size(); ++r) {
        key += "|";
        for (const Tuple& tu : s.tuples(r)) {
            for (int e : tu) key += std::to_string(e) + ",";
            key += ";";
        }
    }
    return key;
}

// Data preserved by rank-q equivalence, used to bucket the class reps: the
// anchor facts and, from rank 1 on, the set of one-point-extension facts.
std::string bucket_key(const Structure& ball, const Tuple& t, int rank) {
    std::string key = std::to_string(t.size()) + "/" + position_facts(ball, t);
    if (rank >= 1) {
        std::set<std::string> ext;
        Tuple grown = t;
        for (int c = 0; c < ball.domain_size(); ++c) {
            grown.push_back(c);
            ext.insert(position_facts(ball, grown));
            grown.pop_back();
        }
        key += "//";
        for (const auto& e : ext) key += e + ",";
    }
    return key;
}

}  // namespace

bool EfOracle::equivalent(const Structure& s1, const Tuple& t1, const Structure& s2,
                          const Tuple& t2, int radius, int rank) {
    if (!(s1.signature() == s2.signature())) return false;
    if (t1.size() != t2.size()) return false;
    Ball b1 = extract_ball(s1, t1, radius);
    Ball b2 = extract_ball(s2, t2, radius);
    return play(b1.structure, b1.tuple, b2.structure, b2.tuple, rank);
}

int EfOracle::Universe::classify(const Structure& s, const Tuple& t) {
    Ball b = extract_ball(s, t, radius);
    std::string key = b.structure.domain_size() <= 6 ? canonical_pointed(b.structure, b.tuple)
                                                     : labeled_key(b.structure, b.tuple);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::string bucket = bucket_key(b.structure, b.tuple, rank);
    int found = -1;
    for (std::size_t i = 0; i < reps.size() && found < 0; ++i) {
        if (reps[i].tuple.size() != b.tuple.size()) continue;
        if (rep_buckets[i] != bucket) continue;
        if (play(reps[i].ball, reps[i].tuple, b.structure, b.tuple, rank))
            found = static_cast<int>(i);
    }
    if (found < 0) {
        reps.push_back({b.structure, b.tuple});
        rep_buckets.push_back(bucket);
        found = static_cast<int>(reps.size()) - 1;
    }
    memo.emplace(std::move(key), found);
    return found;
}

std::vector<int> ef_class_set(EfOracle::Universe& universe, const Structure& s, int k) {
    std::vector<int> classes;
    if (s.domain_size() == 0) return classes;
    Tuple t(static_cast<std::size_t>(k), 0);
    while (true) {
        int cls = universe.classify(s, t);
        if (std::find(classes.begin(), classes.end(), cls) == classes.end()) classes.push_back(cls);
        int pos = k - 1;
        while (pos >= 0 && t[static_cast<std::size_t>(pos)] == s.domain_size() - 1) {
            t[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++t[static_cast<std::size_t>(pos)];
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

}  // namespace gaifman::accept
