#include <iostream>

#include "twistor/cli.hpp"

int main(int argc, char** argv) { return twistor::cli::dispatch(argc, argv, std::cout, std::cerr); }
