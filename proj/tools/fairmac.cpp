#include "fairmac/cli.hpp"

#include <iostream>

int
main (int argc, char **argv)
{
  return fairmac::cli::main (argc, argv, std::cout, std::cerr);
}
