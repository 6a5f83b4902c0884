#ifndef GAIFMAN_STRUCTURE_IO_HPP
#define GAIFMAN_STRUCTURE_IO_HPP

#include <string>

#include "gaifman/structure.hpp"

namespace gaifman {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

// Line-oriented structure text format:
//   signature: E/2 B/1
//   domain: 5
//   E: (0,1) (1,2)
//   B: (2)
// Unlisted relations are empty. '#' starts a comment.
Structure parse_structure(const std::string& text);
std::string print_structure(const Structure& s);

Structure load_structure_file(const std::string& path);
void save_structure_file(const Structure& s, const std::string& path);

}  // namespace gaifman

#endif
