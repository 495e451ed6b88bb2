#include <iostream>

#include "ddl/cli/run.hpp"

int main(int argc, char** argv)
{
    return ddl::cli::run(argc, argv, std::cout, std::cerr);
}
