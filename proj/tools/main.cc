#include <iostream>

#include "teleqec/cli.h"

int main(int argc, char **argv) {
    return teleqec::run_cli(argc, argv, std::cout, std::cerr);
}
