#include <iostream>

#include "rrzero/io.hpp"

int main(int argc, char** argv) {
    return rrzero::run_cli(argc, argv, std::cout, std::cerr);
}
