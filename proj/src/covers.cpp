#include "gaifman/covers.hpp"

#include <algorithm>

namespace gaifman {

namespace {

// Ball membership sets around every element, radius fixed.
std::vector<std::vector<int>> balls_at(const Structure& s, int radius) {
    Graph g = gaifman_graph(s);
    std::vector<std::vector<int>> out(static_cast<std::size_t>(s.domain_size()));
    for (int v = 0; v < s.domain_size(); ++v) {
        auto dist = bfs_distances(g, {v});
        for (int w = 0; w < s.domain_size(); ++w)
            if (dist[static_cast<std::size_t>(w)] <= radius) out[static_cast<std::size_t>(v)].push_back(w);
    }
    return out;
}

}  // namespace

CoverResult extended_cover(const Structure& s, const Tuple& anchors, int r) {
    if (anchors.empty()) throw std::invalid_argument("extended_cover: empty tuple");
    CoverResult res;
    Tuple current = anchors;
    int radius = r;
    Graph g = gaifman_graph(s);
    while (true) {
        if (current.size() == 1) break;
        // Pairwise 3*radius ball intersection, first pair lexicographically.
        std::vector<std::vector<int>> dist;
        dist.reserve(current.size());
        for (int a : current) dist.push_back(bfs_distances(g, {a}));
        int pi = -1, pj = -1, witness = -1;
        for (std::size_t i = 0; i < current.size() && pi < 0; ++i) {
            for (std::size_t j = i + 1; j < current.size() && pi < 0; ++j) {
                for (int c = 0; c < s.domain_size(); ++c) {
                    if (dist[i][static_cast<std::size_t>(c)] <= 3 * radius &&
                        dist[j][static_cast<std::size_t>(c)] <= 3 * radius) {
                        pi = static_cast<int>(i);
                        pj = static_cast<int>(j);
                        witness = c;
                        break;
                    }
                }
            }
        }
        if (pi < 0) break;  // all 3R-balls pairwise disjoint
        Tuple next{witness};
        for (std::size_t t = 0; t < current.size(); ++t)
            if (static_cast<int>(t) != pi && static_cast<int>(t) != pj) next.push_back(current[t]);
        res.trace.push_back("merge centers " + std::to_string(current[static_cast<std::size_t>(pi)]) +
                            "," + std::to_string(current[static_cast<std::size_t>(pj)]) +
                            " via witness " + std::to_string(witness) + " at radius " +
                            std::to_string(radius) + " -> " + std::to_string(4 * radius));
        current = std::move(next);
        radius *= 4;
    }
    res.centers = std::move(current);
    res.radius = radius;
    return res;
}

namespace {

bool scattered_extend(const std::vector<std::vector<int>>& dist, int n, int two_r, int m,
                      std::vector<int>& chosen, int from) {
    if (static_cast<int>(chosen.size()) == m) return true;
    for (int v = from; v < n; ++v) {
        bool ok = true;
        for (int c : chosen) {
            if (dist[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)] <= two_r) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        chosen.push_back(v);
        if (scattered_extend(dist, n, two_r, m, chosen, v + 1)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> scattered_set(const Structure& s, int r, int m) {
    if (m <= 0) return std::vector<int>{};
    if (s.domain_size() == 0) return std::nullopt;
    auto dist = all_pairs_distances(gaifman_graph(s));
    std::vector<int> chosen;
    if (scattered_extend(dist, s.domain_size(), 2 * r, m, chosen, 0)) return chosen;
    return std::nullopt;
}

std::optional<std::vector<int>> ball_cover_centers(const Structure& s, int radius, int count) {
    if (s.domain_size() == 0) return std::vector<int>{};
    if (count <= 0) return std::nullopt;
    auto balls = balls_at(s, radius);
    std::vector<int> chosen;
    std::function<bool(int)> extend = [&](int from) -> bool {
        std::vector<bool> seen(static_cast<std::size_t>(s.domain_size()), false);
        int covered = 0;
        for (int c : chosen)
            for (int w : balls[static_cast<std::size_t>(c)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    ++covered;
                }
        if (covered == s.domain_size()) return true;
        if (static_cast<int>(chosen.size()) == count) return false;
        for (int v = from; v < s.domain_size(); ++v) {
            chosen.push_back(v);
            if (extend(v + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (extend(0)) return chosen;
    return std::nullopt;
}

std::vector<Structure> balls_of_class(const std::vector<Structure>& corpus, int r, int k) {
    std::vector<Structure> out;
    for (const Structure& a : corpus) {
        if (a.domain_size() == 0) continue;
        for (int len = 1; len <= k; ++len) {
            Tuple t(static_cast<std::size_t>(len), 0);
            while (true) {
                Structure ball = neighborhood(a, t, r).structure;
                bool fresh_ball = true;
                for (const Structure& seen : out) {
                    if (isomorphic(seen, ball)) {
                        fresh_ball = false;
                        break;
                    }
                }
                if (fresh_ball) out.push_back(std::move(ball));
                int pos = len - 1;
                while (pos >= 0 && t[static_cast<std::size_t>(pos)] == a.domain_size() - 1) {
                    t[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++t[static_cast<std::size_t>(pos)];
            }
        }
    }
    return out;
}

TypeCoverResult type_cover(const Structure& s, int r, int q, int k, TypeOracle oracle,
                           const LocalTypeOptions& opts) {
    auto type_of = [&](int element) {
        Tuple t{element};
        return oracle == TypeOracle::FO ? local_type(s, t, r, q) : mso_local_type(s, t, r, q, opts);
    };

    TypeCoverResult res;
    int n = s.domain_size();
    std::vector<std::string> elem_type(static_cast<std::size_t>(n));
    std::vector<std::string> realized;  // canonical order
    for (int v = 0; v < n; ++v) {
        elem_type[static_cast<std::size_t>(v)] = type_of(v).digest();
        realized.push_back(elem_type[static_cast<std::size_t>(v)]);
    }
    std::sort(realized.begin(), realized.end());
    realized.erase(std::unique(realized.begin(), realized.end()), realized.end());
    int type_count = static_cast<int>(realized.size());  // instance-relative Q

    res.k_budget = type_count * type_count * k;
    res.radius_budget = r;
    for (int i = 0; i < type_count + 1; ++i) res.radius_budget *= 3;  // 3^(Q+1) r

    auto dist = all_pairs_distances(gaifman_graph(s));
    auto min_dist_to = [&](int v, const std::vector<int>& set) {
        int best = kUnreachable;
        for (int c : set) best = std::min(best, dist[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)]);
        return best;
    };

    std::vector<std::string> covered_types;  // S_i, sorted
    std::vector<int> centers;                // C_i
    int stage_radius = r;                    // 3^i r

    while (true) {
        // Types still to be witnessed frequently, canonical order.
        std::vector<std::string> pending;
        for (const auto& t : realized)
            if (!std::binary_search(covered_types.begin(), covered_types.end(), t))
                pending.push_back(t);

        std::vector<int> g;  // G_i^j under construction
        std::map<std::string, int> witness_count;
        bool stalled = false;
        std::string stalled_type;
        while (true) {
            // First pending type with fewer than k witnesses.
            std::string target;
            for (const auto& t : pending) {
                if (witness_count[t] < k) {
                    target = t;
                    break;
                }
            }
            if (target.empty()) break;  // all pending types have k witnesses
            int pick = -1;
            for (int v = 0; v < n; ++v) {
                if (elem_type[static_cast<std::size_t>(v)] != target) continue;
                if (min_dist_to(v, g) <= 2 * stage_radius) continue;
                if (min_dist_to(v, centers) <= 2 * stage_radius) continue;
                pick = v;
                break;
            }
            if (pick < 0) {
                stalled = true;
                stalled_type = target;
                break;
            }
            g.push_back(pick);
            ++witness_count[target];
        }

        if (!stalled) {
            res.radius = stage_radius;
            res.rare_centers = centers;
            res.frequent_reps = g;
            res.covered.assign(static_cast<std::size_t>(n), false);
            for (int v = 0; v < n; ++v) {
                const auto& tv = elem_type[static_cast<std::size_t>(v)];
                bool cov = std::binary_search(covered_types.begin(), covered_types.end(), tv);
                res.covered[static_cast<std::size_t>(v)] = cov;
                if (!cov) {
                    auto& w = res.frequent_witnesses[tv];
                    if (w.empty())
                        for (int u : g)
                            if (elem_type[static_cast<std::size_t>(u)] == tv) w.push_back(u);
                }
            }
            return res;
        }

        // Fold the partial frequent set into the centers and mark the stalled
        // type covered one radius step up.
        for (int v : g) centers.push_back(v);
        covered_types.push_back(stalled_type);
        std::sort(covered_types.begin(), covered_types.end());
        stage_radius *= 3;
        if (static_cast<int>(covered_types.size()) > type_count)
            throw std::logic_error("type_cover: failed to terminate within the type budget");
    }
}

WidenessReport wideness_probe(const std::vector<std::pair<std::string, Structure>>& corpus, int r,
                              int m) {
    WidenessReport rep;
    rep.r = r;
    rep.m = m;
    for (const auto& [name, s] : corpus) {
        WidenessEntry e;
        e.name = name;
        e.size = s.domain_size();
        e.has_scattered = scattered_set(s, r, m).has_value();
        if (!e.has_scattered) rep.rho = std::max(rep.rho, e.size);
        rep.entries.push_back(std::move(e));
    }
    int max_size = 0;
    for (const auto& e : rep.entries) max_size = std::max(max_size, e.size);
    rep.all_large_have_scattered = rep.rho < max_size;
    return rep;
}

}  // namespace gaifman
