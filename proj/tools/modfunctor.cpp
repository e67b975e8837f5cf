#include <iostream>

#include "modfunctor/cli.hpp"

int main(int argc, char** argv)
{
    return modfunctor::run_cli(argc, argv, std::cout, std::cerr);
}
