#include <iostream>

#include "accept/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> only;
    for (int i = 1; i < argc; ++i) only.push_back(argv[i]);
    bool ok = gaifman::accept::run_acceptance(std::cout, only);
    return ok ? 0 : 1;
}
