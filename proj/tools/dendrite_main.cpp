#include <iostream>

#include "dendrite/cli.hpp"

int main(int argc, char** argv) { return dendrite::run_cli(argc, argv, std::cout, std::cerr); }
