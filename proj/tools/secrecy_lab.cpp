#include <iostream>

#include "seclab/cli.hpp"

int main(int argc, char** argv) {
    return seclab::cli::run(argc, argv, std::cout, std::cerr);
}
