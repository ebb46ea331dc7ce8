#include "chipfire/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return chipfire::cli::run(argc, argv, std::cout, std::cerr);
}
