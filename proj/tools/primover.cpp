#include <iostream>

#include "primover/cli.hpp"

int main(int argc, char** argv) {
    return primover::cli::run(argc, argv, std::cout, std::cerr);
}
