#include <iostream>

#include "mehler/cli.hpp"

int main(int argc, char** argv) { return mehler::runCli(argc, argv, std::cout, std::cerr); }
