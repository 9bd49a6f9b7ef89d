#include <iostream>

#include "specinf/cli.hpp"

int main(int argc, char** argv) {
    return specinf::run_cli(argc, argv, std::cout, std::cerr);
}
