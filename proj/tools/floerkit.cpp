#include <iostream>

#include "floerkit/cli.hpp"

int main(int argc, char** argv) { return fk::dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr); }
