#include <iostream>
#include <string>
#include <vector>

#include "ibvp3/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ibvp3::run_cli(args, std::cout, std::cerr);
}
