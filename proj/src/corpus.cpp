#include "gaifman/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gaifman/families.hpp"
#include "gaifman/structure_io.hpp"

namespace gaifman {

void Corpus::add(std::string name, Structure s) {
    for (const auto& [n, unused] : items_)
        if (n == name) throw std::invalid_argument("duplicate corpus name: " + name);
    if (!items_.empty() && !(items_.front().second.signature() == s.signature()))
        throw std::invalid_argument("corpus signature mismatch at " + name);
    items_.emplace_back(std::move(name), std::move(s));
}

std::vector<Structure> Corpus::structures() const {
    std::vector<Structure> out;
    out.reserve(items_.size());
    for (const auto& [name, s] : items_) out.push_back(s);
    return out;
}

Structure structure_from_spec(const std::string& spec) {
    std::stringstream ss(spec);
    std::string kind;
    ss >> kind;
    auto read_int = [&] {
        int v;
        if (!(ss >> v)) throw std::invalid_argument("bad generator spec: " + spec);
        return v;
    };
    if (kind == "path") return gen_path(read_int());
    if (kind == "cycle") return gen_cycle(read_int());
    if (kind == "clique") return gen_clique(read_int());
    if (kind == "diamond") return gen_diamond(read_int());
    if (kind == "pointed-cycle") return gen_pointed(gen_cycle(read_int()));
    if (kind == "pointed-path") return gen_pointed(gen_path(read_int()));
    if (kind == "ord") {
        int m = read_int();
        return gen_ord(m, read_int());
    }
    if (kind == "ord-b") {
        int m = read_int();
        return gen_ord_b(m, read_int());
    }
    if (kind == "file") {
        std::string path;
        ss >> path;
        return load_structure_file(path);
    }
    throw std::invalid_argument("unknown generator spec: " + spec);
}

Corpus load_corpus(const std::string& path) {
    namespace fs = std::filesystem;
    Corpus corpus;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.path().extension() == ".struct") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) corpus.add(f.stem().string(), load_structure_file(f.string()));
        return corpus;
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto strip = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            std::size_t e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("corpus line " + std::to_string(line_no) + ": expected name = spec");
        corpus.add(strip(line.substr(0, eq)), structure_from_spec(strip(line.substr(eq + 1))));
    }
    return corpus;
}

}  // namespace gaifman
