#include "gaifman/structure_io.hpp"

#include <fstream>
#include <sstream>
#include <tuple>

namespace gaifman {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Tuple> parse_tuples(const std::string& body, int arity, int domain, int line_no) {
    std::vector<Tuple> out;
    std::size_t i = 0;
    while (i < body.size()) {
        if (body[i] == ' ' || body[i] == '\t') {
            ++i;
            continue;
        }
        if (body[i] != '(') throw ParseError(line_no, "expected '(' in tuple list");
        std::size_t close = body.find(')', i);
        if (close == std::string::npos) throw ParseError(line_no, "unterminated tuple");
        std::string inner = body.substr(i + 1, close - i - 1);
        Tuple t;
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = strip(item);
            if (item.empty()) throw ParseError(line_no, "empty tuple entry");
            try {
                std::size_t used = 0;
                int v = std::stoi(item, &used);
                if (used != item.size()) throw std::invalid_argument("");
                t.push_back(v);
            } catch (const std::exception&) {
                throw ParseError(line_no, "not an integer: '" + item + "'");
            }
        }
        if (static_cast<int>(t.size()) != arity)
            throw ParseError(line_no, "arity mismatch: expected " + std::to_string(arity) +
                                          " got " + std::to_string(t.size()));
        for (int v : t)
            if (v < 0 || v >= domain)
                throw ParseError(line_no, "element " + std::to_string(v) + " out of range [0," +
                                              std::to_string(domain) + ")");
        out.push_back(std::move(t));
        i = close + 1;
    }
    return out;
}

}  // namespace

Signature Signature::parse(const std::string& text) {
    std::vector<RelationInfo> rels;
    std::stringstream ss(text);
    std::string item;
    while (ss >> item) {
        std::size_t slash = item.find('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 >= item.size())
            throw std::invalid_argument("bad relation spec (want name/arity): " + item);
        RelationInfo r;
        r.name = item.substr(0, slash);
        r.arity = std::stoi(item.substr(slash + 1));
        rels.push_back(std::move(r));
    }
    return Signature(std::move(rels));
}

Structure parse_structure(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::optional<Signature> sig;
    std::optional<int> domain;
    std::vector<std::tuple<int, std::string, std::string>> relation_lines;  // (line, name, body)

    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError(line_no, "expected 'key: value'");
        std::string key = strip(line.substr(0, colon));
        std::string value = strip(line.substr(colon + 1));
        if (key == "signature") {
            if (sig) throw ParseError(line_no, "duplicate signature line");
            try {
                sig = Signature::parse(value);
            } catch (const std::exception& e) {
                throw ParseError(line_no, e.what());
            }
        } else if (key == "domain") {
            if (domain) throw ParseError(line_no, "duplicate domain line");
            try {
                domain = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad domain size: " + value);
            }
            if (*domain < 0) throw ParseError(line_no, "negative domain size");
        } else {
            relation_lines.emplace_back(line_no, key, value);
        }
    }
    if (!sig) throw ParseError(line_no, "missing signature line");
    if (!domain) throw ParseError(line_no, "missing domain line");

    Structure s(*sig, *domain);
    for (const auto& [ln, name, body] : relation_lines) {
        int rel = sig->index_of(name);
        if (rel < 0) throw ParseError(ln, "unknown relation: " + name);
        for (const Tuple& t : parse_tuples(body, sig->arity(rel), *domain, ln)) s.add(rel, t);
    }
    return s;
}

std::string print_structure(const Structure& s) {
    std::string out = "signature: " + s.signature().to_string() + "\n";
    out += "domain: " + std::to_string(s.domain_size()) + "\n";
    for (int r = 0; r < s.signature().size(); ++r) {
        if (s.tuples(r).empty()) continue;
        out += s.signature().relation(r).name + ":";
        for (const Tuple& t : s.tuples(r)) {
            out += " (";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(t[i]);
            }
            out += ')';
        }
        out += '\n';
    }
    return out;
}

Structure load_structure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open structure file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_structure(buf.str());
}

void save_structure_file(const Structure& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write structure file: " + path);
    out << print_structure(s);
}

}  // namespace gaifman
