#include "gaifman/ord.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gaifman/eval.hpp"

namespace gaifman {

namespace {

Formula rel2(const char* name, const std::string& a, const std::string& b) {
    return f_atom(-1, name, {a, b});
}
Formula leq(const std::string& a, const std::string& b) { return rel2("leq", a, b); }
Formula succ(const std::string& a, const std::string& b) { return rel2("S", a, b); }
Formula edge(const std::string& a, const std::string& b) { return rel2("E", a, b); }
Formula lt(const std::string& a, const std::string& b) {
    return f_and({leq(a, b), f_not(f_equal(a, b))});
}

}  // namespace

std::vector<NamedFormula> axioms_ord() {
    std::vector<NamedFormula> out;

    out.push_back({"i", f_and({
        f_forall("a", leq("a", "a")),
        f_forall("a", f_forall("b", f_forall("c", f_implies(f_and({leq("a", "b"), leq("b", "c")}),
                                                            leq("a", "c"))))),
        f_forall("a", f_forall("b", f_implies(f_and({leq("a", "b"), leq("b", "a")}),
                                              f_equal("a", "b")))),
    })});

    out.push_back({"ii", f_forall("a", f_exists("b", f_or({lt("a", "b"), lt("b", "a")})))});

    out.push_back({"iii", f_and({
        f_forall("a", f_forall("b", f_forall("c", f_implies(f_and({succ("a", "b"), succ("a", "c")}),
                                                            f_equal("b", "c"))))),
        f_forall("a", f_forall("b", f_forall("c", f_implies(f_and({succ("b", "a"), succ("c", "a")}),
                                                            f_equal("b", "c"))))),
        f_forall("a", f_not(succ("a", "a"))),
    })});

    out.push_back({"iv", f_forall("a", f_forall("b", f_not(f_and({succ("a", "b"), leq("b", "a")}))))});

    out.push_back({"v", f_forall("a", f_forall("b", f_implies(lt("a", "b"),
        f_exists("c", f_and({succ("a", "c"), leq("a", "c"), leq("c", "b")})))))});

    out.push_back({"vi", f_forall("a", f_forall("b", f_implies(edge("a", "b"),
        f_exists("c1", f_exists("c2", f_and({leq("a", "c1"), succ("c1", "c2"),
                                             f_not(leq("c1", "c2")), leq("c2", "b")}))))))});

    out.push_back({"vii", f_forall("a", f_forall("b", f_forall("c",
        f_implies(f_and({leq("a", "b"), edge("a", "c"), succ("a", "b")}), edge("b", "c")))))});

    out.push_back({"viii", f_forall("a", f_forall("b", f_forall("c",
        f_implies(f_and({leq("b", "c"), edge("a", "c"), succ("b", "c")}), edge("a", "b")))))});

    out.push_back({"ix", f_forall("a", f_forall("b",
        f_implies(f_and({succ("a", "b"), leq("a", "b"), f_exists("d", edge("a", "d"))}),
                  f_exists("c", f_and({edge("b", "c"), f_not(edge("a", "c"))})))))});

    out.push_back({"x", f_forall("a", f_forall("b",
        f_implies(f_and({succ("a", "b"), leq("a", "b"), f_exists("d", edge("d", "a"))}),
                  f_exists("c", f_and({edge("c", "a"), f_not(edge("c", "b"))})))))});

    out.push_back({"xi", f_forall("a", f_forall("b", f_implies(edge("a", "b"),
        f_exists("c", f_and({succ("b", "c"), leq("b", "c")})))))});

    out.push_back({"xii", f_forall("a", f_forall("b",
        f_implies(f_exists("c", f_and({leq("a", "c"), succ("c", "b"), f_not(leq("c", "b"))})),
                  edge("a", "b"))))});

    return out;
}

namespace {

// Structural reconstruction of the chained-orders shape; fills intervals on
// success. Assumes all axioms hold; reports the first obstruction otherwise.
bool decompose(const Structure& s, std::vector<std::pair<int, int>>& intervals,
               std::string& detail) {
    int n = s.domain_size();
    int leq_r = s.signature().index_of("leq");
    int succ_r = s.signature().index_of("S");
    int e_r = s.signature().index_of("E");

    // leq-components.
    Graph leq_g(n);
    for (const Tuple& t : s.tuples(leq_r))
        if (t[0] != t[1]) leq_g.add_edge(t[0], t[1]);
    auto comps = graph_components(leq_g);

    // Within each component: total order with S the in-chain successor, no E.
    std::vector<int> comp_of(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> ordered;  // component elements by leq position
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (int v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
        std::vector<int> elems = comps[c];
        if (elems.size() < 2) {
            detail = "leq-component of size " + std::to_string(elems.size());
            return false;
        }
        for (int a : elems)
            for (int b : elems)
                if (a != b && !s.has(leq_r, {a, b}) && !s.has(leq_r, {b, a})) {
                    detail = "leq-component not totally ordered";
                    return false;
                }
        std::sort(elems.begin(), elems.end(), [&](int a, int b) {
            return a != b && s.has(leq_r, {a, b}) && !(s.has(leq_r, {b, a}));
        });
        for (std::size_t i = 0; i + 1 < elems.size(); ++i) {
            if (!s.has(succ_r, {elems[i], elems[i + 1]})) {
                detail = "S is not the in-chain successor";
                return false;
            }
        }
        for (int a : elems)
            for (int b : elems)
                if (s.has(e_r, {a, b})) {
                    detail = "E inside a leq-component";
                    return false;
                }
        ordered.push_back(std::move(elems));
    }

    // Cross-chain S links: last -> first, at most one out/in per component.
    std::vector<int> next_comp(comps.size(), -1), prev_comp(comps.size(), -1);
    for (const Tuple& t : s.tuples(succ_r)) {
        int ca = comp_of[static_cast<std::size_t>(t[0])];
        int cb = comp_of[static_cast<std::size_t>(t[1])];
        if (ca == cb) continue;
        if (t[0] != ordered[static_cast<std::size_t>(ca)].back() ||
            t[1] != ordered[static_cast<std::size_t>(cb)].front()) {
            detail = "cross S-link not last-to-first";
            return false;
        }
        if (next_comp[static_cast<std::size_t>(ca)] >= 0 || prev_comp[static_cast<std::size_t>(cb)] >= 0) {
            detail = "branching S-link between chains";
            return false;
        }
        next_comp[static_cast<std::size_t>(ca)] = cb;
        prev_comp[static_cast<std::size_t>(cb)] = ca;
    }

    // Sizes step by one along links; E matches the b <= a rule exactly.
    std::set<std::pair<int, int>> expected_e;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        int nc = next_comp[c];
        if (nc < 0) continue;
        const auto& cur = ordered[c];
        const auto& nxt = ordered[static_cast<std::size_t>(nc)];
        if (nxt.size() != cur.size() + 1) {
            detail = "linked chain sizes do not step by one";
            return false;
        }
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (std::size_t b = 0; b <= a; ++b) expected_e.insert({cur[a], nxt[b]});
    }
    std::set<std::pair<int, int>> actual_e;
    for (const Tuple& t : s.tuples(e_r)) actual_e.insert({t[0], t[1]});
    if (expected_e != actual_e) {
        detail = "E does not match the chained-order rule";
        return false;
    }

    // Walk maximal chains and read off intervals; reject S-cycles.
    std::vector<std::pair<int, std::pair<int, int>>> found;  // (first element id, interval)
    std::size_t visited = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (prev_comp[c] >= 0) continue;
        int first = static_cast<int>(c);
        int m = static_cast<int>(ordered[c].size());
        int last_size = m;
        ++visited;
        for (int cur = next_comp[c]; cur >= 0; cur = next_comp[static_cast<std::size_t>(cur)]) {
            last_size = static_cast<int>(ordered[static_cast<std::size_t>(cur)].size());
            ++visited;
        }
        found.push_back({ordered[static_cast<std::size_t>(first)].front(), {m, last_size}});
    }
    if (visited != comps.size()) {
        detail = "S-cycle between chains";
        return false;
    }
    std::sort(found.begin(), found.end());
    for (const auto& [anchor, iv] : found) intervals.push_back(iv);
    return true;
}

}  // namespace

AxiomReport check_axioms(const Structure& s) {
    for (const char* name : {"leq", "S", "E"})
        if (s.signature().index_of(name) < 0)
            throw std::invalid_argument("check_axioms: signature lacks relation " + std::string(name));
    AxiomReport rep;
    rep.all_pass = true;
    Evaluator ev(s);
    for (const auto& [name, formula] : axioms_ord()) {
        bool ok = ev.eval(formula);
        rep.verdicts.emplace_back(name, ok);
        rep.all_pass = rep.all_pass && ok;
    }
    if (rep.all_pass) {
        rep.decomposed = decompose(s, rep.intervals, rep.detail);
    }
    return rep;
}

Formula phi_cc_paths() {
    auto deg1 = [](const std::string& x) {
        return f_exists("y_" + x, f_and({rel2("E", x, "y_" + x),
                                         f_forall("z_" + x, f_implies(rel2("E", x, "z_" + x),
                                                                      f_equal("z_" + x, "y_" + x)))}));
    };
    auto deg0 = [](const std::string& x) {
        return f_forall("y_" + x, f_not(rel2("E", x, "y_" + x)));
    };
    std::vector<Formula> pairwise4;
    std::vector<std::string> xs{"x1", "x2", "x3", "x4"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            pairwise4.push_back(f_not(f_equal(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)])));
    Formula d1 = f_exists("x1", f_exists("x2", f_exists("x3", f_exists("x4",
        f_and({f_and(pairwise4), deg1("x1"), deg1("x2"), deg1("x3"), deg1("x4")})))));
    Formula d2 = f_exists("x1", f_exists("x2",
        f_and({f_not(f_equal("x1", "x2")), deg0("x1"), deg0("x2")})));
    Formula d3 = f_exists("x1", f_exists("x2", f_exists("x3",
        f_and({f_not(f_equal("x1", "x2")), f_not(f_equal("x2", "x3")), f_not(f_equal("x1", "x3")),
               deg1("x1"), deg1("x2"), deg0("x3")}))));
    return f_or({d1, d2, d3});
}

Formula phi_cc_ord() {
    return f_exists("x1", f_exists("x2", f_and({
        f_not(f_equal("x1", "x2")),
        f_forall("y", f_and({f_not(succ("y", "x1")), f_not(succ("y", "x2"))})),
    })));
}

Formula phi_b(const Formula& cc) {
    return f_forall("x", f_or({f_not(f_atom(-1, "B", {"x"})), cc}));
}

}  // namespace gaifman
