#include "initrec/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return initrec::run_cli(argc, argv, std::cout, std::cerr);
}
