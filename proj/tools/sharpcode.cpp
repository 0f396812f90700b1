#include <iostream>

#include "sharpcode/cli.hpp"

int main(int argc, char** argv) {
    return sharpcode::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
