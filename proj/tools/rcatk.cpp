#include <iostream>

#include "rcatk/cli.hpp"

int main(int argc, char** argv)
{
    return rcatk::cli::run(argc, argv, std::cout, std::cerr);
}
