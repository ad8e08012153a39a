#include <iostream>
#include <string>
#include <vector>

#include "qfib/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return qfib::cli::run(args, std::cout, std::cerr);
}
