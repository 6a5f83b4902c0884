#ifndef GAIFMAN_SIGNATURE_HPP
#define GAIFMAN_SIGNATURE_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace gaifman {

struct RelationInfo {
    std::string name;
    int arity = 0;

    friend bool operator==(const RelationInfo&, const RelationInfo&) = default;
};

// Finite relational signature: named relations with arity >= 1.
class Signature {
public:
    Signature() = default;

    explicit Signature(std::vector<RelationInfo> relations) : relations_(std::move(relations)) {
        for (std::size_t i = 0; i < relations_.size(); ++i) {
            if (relations_[i].arity < 1)
                throw std::invalid_argument("relation arity must be >= 1: " + relations_[i].name);
            for (std::size_t j = 0; j < i; ++j)
                if (relations_[j].name == relations_[i].name)
                    throw std::invalid_argument("duplicate relation name: " + relations_[i].name);
        }
    }

    int size() const { return static_cast<int>(relations_.size()); }
    const RelationInfo& relation(int i) const { return relations_.at(static_cast<std::size_t>(i)); }
    const std::vector<RelationInfo>& relations() const { return relations_; }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < relations_.size(); ++i)
            if (relations_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    int arity(int i) const { return relation(i).arity; }

    friend bool operator==(const Signature&, const Signature&) = default;

    // "E/2 B/1" form, as in the structure text format.
    std::string to_string() const {
        std::string out;
        for (const auto& r : relations_) {
            if (!out.empty()) out += ' ';
            out += r.name + "/" + std::to_string(r.arity);
        }
        return out;
    }

    static Signature parse(const std::string& text);

    // Common signatures used throughout.
    static Signature graph() { return Signature({{"E", 2}}); }
    static Signature colored_graph() { return Signature({{"E", 2}, {"G", 1}, {"B", 1}}); }
    static Signature two_colors() { return Signature({{"G", 1}, {"B", 1}}); }
    static Signature ord() { return Signature({{"leq", 2}, {"S", 2}, {"E", 2}}); }
    static Signature ord_b() { return Signature({{"leq", 2}, {"S", 2}, {"E", 2}, {"B", 1}}); }

private:
    std::vector<RelationInfo> relations_;
};

}  // namespace gaifman

#endif
