#include <iostream>
#include <vector>

#include "expbasis/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return expbasis::run_cli(args, std::cout, std::cerr);
}
