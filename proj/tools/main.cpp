#include <iostream>
#include <string>
#include <vector>

#include "cheigen/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cheigen::run_command(args, std::cin, std::cout, std::cerr);
}
