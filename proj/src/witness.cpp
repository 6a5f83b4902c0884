#include "gaifman/witness.hpp"

#include <algorithm>

#include "gaifman/classify.hpp"
#include "gaifman/families.hpp"
#include "gaifman/ord.hpp"

namespace gaifman {

namespace {

std::vector<Formula> existential_local_conjuncts(const Formula& psi) {
    std::vector<Formula> parts;
    if (psi.kind() == FKind::And) {
        for (const auto& c : psi.children()) parts.emplace_back(c);
    } else {
        parts.push_back(psi);
    }
    std::erase_if(parts, [](const Formula& p) { return is_true(p); });
    for (const Formula& p : parts) {
        auto cls = classify(p);
        if (cls.cls > SentenceClass::ExistentialLocal)
            throw std::invalid_argument(
                "counterexample_witness: conjunct is not existential local: " + print_formula(p));
    }
    return parts;
}

}  // namespace

WitnessReport counterexample_witness(const Formula& psi, WitnessFamily family,
                                     const EvalOptions& opts) {
    std::vector<Formula> conjuncts = existential_local_conjuncts(psi);
    int total_k = 0, max_r = 0;
    std::vector<int> radii;
    for (const Formula& c : conjuncts) {
        auto cls = classify(c);
        total_k += cls.k;
        max_r = std::max(max_r, cls.r_full);
        radii.push_back(cls.r_full);
    }
    total_k = std::max(total_k, 1);

    WitnessReport rep;
    Formula phi_b_sentence;
    if (family == WitnessFamily::Paths) {
        int n = total_k * (2 * max_r + 1) + 1;
        Structure path = gen_path(n);
        Structure base(Signature({{"E", 2}, {"B", 1}}), n);
        for (const Tuple& t : path.tuples(0)) base.add(0, t);
        rep.base = std::move(base);
        phi_b_sentence = phi_b(phi_cc_paths());
    } else {
        int n = std::max(2, 2 * total_k * (2 * max_r + 1) + 1);
        rep.base = gen_ord_b(2, n);
        phi_b_sentence = phi_b(phi_cc_ord());
    }

    // Extract one witness tuple per conjunct.
    rep.base_satisfies_psi = true;
    for (const Formula& c : conjuncts) {
        auto w = existential_witness(rep.base, c, opts);
        if (!w) {
            rep.base_satisfies_psi = false;
            rep.verdict = "psi already disagrees with phi_B on A";
            return rep;
        }
        std::vector<std::string> prefix;
        Formula m = c;
        while (m.kind() == FKind::Exists) {
            prefix.push_back(m.node().vars[0]);
            m = m.child(0);
        }
        Tuple t;
        for (const auto& v : prefix) t.push_back(w->at(v));
        rep.witnesses.push_back(std::move(t));
    }

    // Union of the witnesses' balls, at each conjunct's own radius.
    std::vector<bool> covered(static_cast<std::size_t>(rep.base.domain_size()), false);
    for (std::size_t j = 0; j < conjuncts.size(); ++j) {
        if (rep.witnesses[j].empty()) continue;
        for (int v : neighborhood(rep.base, rep.witnesses[j], radii[j]).old_of_new)
            covered[static_cast<std::size_t>(v)] = true;
    }
    int uncovered = -1;
    for (int v = 0; v < rep.base.domain_size(); ++v)
        if (!covered[static_cast<std::size_t>(v)]) {
            uncovered = v;
            break;
        }
    if (uncovered < 0)
        throw std::logic_error(
            "counterexample_witness: no element escapes the witness balls; structure too small");

    Structure flipped = rep.base;
    flipped.add("B", {uncovered});
    rep.flipped_element = uncovered;

    rep.flipped_satisfies_psi = true;
    for (const Formula& c : conjuncts)
        rep.flipped_satisfies_psi = rep.flipped_satisfies_psi && eval_sentence(flipped, c, opts);
    rep.flipped_satisfies_phi_b = eval_sentence(flipped, phi_b_sentence, opts);
    rep.flipped = std::move(flipped);
    rep.verdict = "counterexample";
    return rep;
}

}  // namespace gaifman
