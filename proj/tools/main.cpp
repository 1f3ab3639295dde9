#include <iostream>

#include "seqreason/cli.hpp"

int main(int argc, char** argv) {
    return seqreason::cli::run(argc, argv, std::cout, std::cerr);
}
