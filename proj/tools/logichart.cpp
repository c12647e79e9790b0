#include <iostream>

#include "logichart/cli.hpp"

int main(int argc, char** argv) { return logichart::cli_main(argc, argv, std::cout, std::cerr); }
