#include "gaifman/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gaifman/transform.hpp"

namespace gaifman {

std::string to_string(SentenceClass c) {
    switch (c) {
        case SentenceClass::BasicLocal: return "basic-local";
        case SentenceClass::AsymmetricBasicLocal: return "asymmetric-basic-local";
        case SentenceClass::AlmostBasicLocal: return "almost-basic-local";
        case SentenceClass::ExistentialLocal: return "existential-local";
        case SentenceClass::PositiveBasicLocalCombination: return "positive-basic-local-combination";
        case SentenceClass::Other: return "other";
    }
    return "other";
}

namespace {

std::vector<Formula> conjuncts(const Formula& f) {
    if (f.kind() == FKind::And) {
        std::vector<Formula> out;
        for (const auto& c : f.children()) out.emplace_back(c);
        return out;
    }
    return {f};
}

bool positive_combination_of_basics(const Formula& f) {
    if (f.kind() == FKind::And || f.kind() == FKind::Or) {
        for (const auto& c : f.children()) {
            Formula cf(c);
            if (!cf.is_sentence() || !positive_combination_of_basics(cf)) return false;
        }
        return true;
    }
    return classify(f).cls == SentenceClass::BasicLocal;
}

}  // namespace

ClassifyResult classify(const Formula& f) {
    if (!f.is_sentence()) throw std::invalid_argument("classify: formula has free variables");
    ClassifyResult res;

    // Outer block of plain existentials.
    std::vector<std::string> vars;
    Formula body = f;
    while (body.kind() == FKind::Exists) {
        vars.push_back(body.node().vars[0]);
        body = body.child(0);
    }
    int k = static_cast<int>(vars.size());

    if (k == 0) {
        if ((f.kind() == FKind::And || f.kind() == FKind::Or) && positive_combination_of_basics(f)) {
            res.cls = SentenceClass::PositiveBasicLocalCombination;
            return res;
        }
        res.cls = SentenceClass::Other;
        return res;
    }

    res.k = k;
    res.vars = vars;

    auto full_radius = locality_radius(body, vars);
    if (!full_radius) {
        res.cls = SentenceClass::Other;
        return res;
    }

    // Split off the pairwise DistGT block.
    std::set<std::pair<int, int>> covered;
    std::optional<int> sep;
    std::vector<Formula> rest;
    bool block_ok = true;
    std::map<std::string, int> var_index;
    for (int i = 0; i < k; ++i) var_index[vars[static_cast<std::size_t>(i)]] = i;
    for (const Formula& c : conjuncts(body)) {
        const FNode& n = c.node();
        bool is_pair = false;
        if (n.kind == FKind::DistGT) {
            auto it0 = var_index.find(n.vars[0]);
            auto it1 = var_index.find(n.vars[1]);
            if (it0 != var_index.end() && it1 != var_index.end() && it0->second != it1->second) {
                int lo = std::min(it0->second, it1->second);
                int hi = std::max(it0->second, it1->second);
                if (covered.count({lo, hi}) || (sep && *sep != n.radius)) {
                    block_ok = false;  // duplicated pair or mixed thresholds
                } else {
                    sep = n.radius;
                    covered.insert({lo, hi});
                    is_pair = true;
                }
            }
        }
        if (!is_pair) rest.push_back(c);
    }
    bool full_block = block_ok && (k == 1 || static_cast<int>(covered.size()) == k * (k - 1) / 2);

    res.cls = SentenceClass::ExistentialLocal;
    res.r = *full_radius;
    res.r_full = *full_radius;
    res.matrix = body;
    res.full_matrix = body;

    if (!full_block) return res;

    Formula matrix = f_and(rest);
    auto matrix_radius = locality_radius(matrix, vars);
    if (!matrix_radius) return res;
    int r = *matrix_radius;
    if (k >= 2 && 2 * r > *sep) return res;  // separation must dominate twice the radius

    res.cls = SentenceClass::AlmostBasicLocal;
    res.r = k >= 2 ? std::max(r, (*sep + 1) / 2) : r;
    res.sep = sep.value_or(0);
    res.matrix = matrix;

    // Asymmetric: conjuncts factor through single variables.
    std::vector<std::vector<Formula>> groups(static_cast<std::size_t>(k));
    for (const Formula& c : conjuncts(matrix)) {
        const auto& fv = c.free_vars();
        if (fv.empty()) {
            groups[0].push_back(c);
            continue;
        }
        if (fv.size() != 1) return res;
        auto it = var_index.find(fv[0]);
        if (it == var_index.end()) return res;
        groups[static_cast<std::size_t>(it->second)].push_back(c);
    }
    std::vector<Formula> psis;
    int r_asym = 0;
    for (int i = 0; i < k; ++i) {
        Formula psi = f_and(groups[static_cast<std::size_t>(i)]);
        auto pr = locality_radius(psi, {vars[static_cast<std::size_t>(i)]});
        if (!pr) return res;
        r_asym = std::max(r_asym, *pr);
        psis.push_back(psi);
    }
    if (k >= 2 && 2 * r_asym > *sep) return res;

    res.cls = SentenceClass::AsymmetricBasicLocal;
    res.r = k >= 2 ? std::max(r_asym, (*sep + 1) / 2) : r_asym;
    res.psis = psis;

    // Basic: all pieces are the same formula of one variable.
    Formula first = rename_free_var(psis[0], vars[0], "_v");
    for (int i = 1; i < k; ++i) {
        Formula other = rename_free_var(psis[static_cast<std::size_t>(i)],
                                        vars[static_cast<std::size_t>(i)], "_v");
        if (!(first == other)) return res;
    }
    res.cls = SentenceClass::BasicLocal;
    return res;
}

}  // namespace gaifman
