#include <iostream>
#include <string>
#include <vector>

#include "logsim/cli.hpp"

int main(int argc, char** argv) {
    return logsim::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
