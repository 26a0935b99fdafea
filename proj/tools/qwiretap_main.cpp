#include <iostream>
#include <string>
#include <vector>

#include "qwiretap/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qwiretap::cli::main_entry(args, std::cout, std::cerr);
}
