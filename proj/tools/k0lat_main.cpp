#include <iostream>
#include <string>
#include <vector>

#include "k0lat/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return k0lat::cli::run(args, std::cout, std::cerr);
}
