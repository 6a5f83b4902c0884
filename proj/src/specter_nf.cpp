#include "gaifman/specter_nf.hpp"

#include <map>

namespace gaifman {

SpecterNF specter_normal_form(const Formula& phi, const Corpus& corpus, int r, int q, int k,
                              const EvalOptions& opts) {
    if (corpus.empty()) throw std::invalid_argument("specter_normal_form: empty corpus");
    const Signature& sig = corpus.items().front().second.signature();

    std::vector<bool> is_model;
    std::vector<Specter> specters;
    for (const auto& [name, s] : corpus.items()) {
        is_model.push_back(eval_sentence(s, phi, opts));
        specters.push_back(specter(s, r, q, k));
    }

    // Images of the models, deduplicated by their digest sets. An empty
    // structure has the empty specter, whose image would be the always-true
    // empty conjunction; it is skipped and surfaces in the agreement report
    // instead.
    std::map<std::string, const Specter*> images;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!is_model[i]) continue;
        if (corpus.items()[i].second.domain_size() == 0) continue;
        std::string key;
        for (const auto& [digest, ty] : specters[i]) key += digest + "\n";
        images.emplace(key, &specters[i]);
    }

    SpecterNF out;
    std::vector<std::string> vars;
    for (int i = 1; i <= k; ++i) vars.push_back("x" + std::to_string(i));
    std::vector<Formula> disjuncts;
    for (const auto& [key, image] : images) {
        std::vector<Formula> conj;
        for (const auto& [digest, ty] : *image) {
            Formula body = type_formula(ty, sig, vars);
            for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = f_exists(*it, body);
            conj.push_back(body);
        }
        out.pieces.push_back(conj);
        Formula candidate = f_and(std::move(conj));
        out.candidates.push_back(candidate);
        disjuncts.push_back(candidate);
    }
    out.psi = f_or(std::move(disjuncts));

    // Preservation audit: a model below a non-model breaks the hypothesis.
    auto subset = [](const Specter& a, const Specter& b) {
        for (const auto& [digest, ty] : a)
            if (!b.count(digest)) return false;
        return true;
    };
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!is_model[i]) continue;
        for (std::size_t j = 0; j < corpus.size(); ++j) {
            if (is_model[j]) continue;
            if (subset(specters[i], specters[j])) {
                out.preserved = false;
                out.violations.emplace_back(corpus.items()[i].first, corpus.items()[j].first);
            }
        }
    }

    // psi's truth on a structure is, by the characteristic-formula semantics,
    // the containment of some image in the structure's specter (the per-tuple
    // equivalence of type_formula with digest equality is unit-tested).
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& [name, s] = corpus.items()[i];
        bool psi_truth = false;
        for (const auto& [key, image] : images) {
            bool contained = true;
            for (const auto& [digest, ty] : *image)
                if (!specters[i].count(digest)) {
                    contained = false;
                    break;
                }
            if (contained) {
                psi_truth = true;
                break;
            }
        }
        out.agreement.emplace_back(name, is_model[i], psi_truth);
        if (psi_truth != is_model[i]) {
            out.agree_everywhere = false;
            if (s.domain_size() == 0 && is_model[i]) out.empty_domain_edge = true;
        }
    }
    return out;
}

}  // namespace gaifman
