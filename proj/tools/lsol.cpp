#include <iostream>
#include <string>
#include <vector>

#include "lsol/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lsol::run(args, std::cout, std::cerr);
}
