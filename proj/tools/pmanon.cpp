#include <iostream>

#include "pmanon/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return pmanon::run_cli(args, std::cout, std::cerr);
}
