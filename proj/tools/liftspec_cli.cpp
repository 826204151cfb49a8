#include <iostream>

#include "liftspec/commands.hpp"

int main(int argc, char** argv) { return liftspec::run_cli(argc, argv, std::cout, std::cerr); }
