#ifndef GAIFMAN_CORPUS_HPP
#define GAIFMAN_CORPUS_HPP

#include <string>

#include "gaifman/structure.hpp"

namespace gaifman {

// Ordered list of named structures over a common signature.
class Corpus {
public:
    void add(std::string name, Structure s);
    const std::vector<std::pair<std::string, Structure>>& items() const { return items_; }
    std::vector<Structure> structures() const;
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

private:
    std::vector<std::pair<std::string, Structure>> items_;
};

// One generator spec per call: "path 5", "cycle 6", "clique 4", "diamond 4",
// "pointed-cycle 5", "ord 2 5", "ord-b 2 5", "file some.struct".
Structure structure_from_spec(const std::string& spec);

// Load a corpus from a directory of *.struct files (sorted by name) or from
// a manifest file with lines "name = <generator spec>".
Corpus load_corpus(const std::string& path);

}  // namespace gaifman

#endif
