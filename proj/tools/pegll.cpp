// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <iostream>
#include <string>
#include <vector>

#include "pegll/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pegll::cli::run(args, std::cout, std::cerr);
}
