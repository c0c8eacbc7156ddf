#include <cstdlib>
#include <iostream>

#include "hcd/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> mode;
    if (const char* env = std::getenv(hcd::cli::kModeEnv)) mode = env;
    return hcd::cli::run(args, std::cin, std::cout, std::cerr, mode);
}
