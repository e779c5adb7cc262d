#include <iostream>

#include "finmon/cli.hpp"

int main(int argc, char** argv) {
    return finmon::run_cli(argc, argv, std::cout, std::cerr);
}
