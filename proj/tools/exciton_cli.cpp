#include <iostream>
#include <string>
#include <vector>

#include "exciton/cli.hpp"

int main(int argc, char** argv) {
    return exciton::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
