#include <iostream>
#include <string>
#include <vector>

#include "twofold/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return twofold::cli::run(args, std::cout, std::cerr);
}
