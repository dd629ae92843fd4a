#include <iostream>
#include <vector>

#include "sinflow/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sinflow::run_cli(args, std::cout, std::cerr);
}
