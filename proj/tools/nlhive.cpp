#include <iostream>

#include "nlhive/cli.hpp"

int main(int argc, char** argv) {
    return nlhive::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
