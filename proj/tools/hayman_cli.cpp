#include <iostream>
#include <string>
#include <vector>

#include "hayman/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return hayman::run_command(args, std::cout, std::cerr);
}
