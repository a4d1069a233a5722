#include <iostream>

#include "pspec/cli.hpp"

int main(int argc, char** argv) {
    return pspec::run_cli(argc, argv, std::cout, std::cerr);
}
