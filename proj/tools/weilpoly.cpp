#include <weilpoly/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return weilpoly::cli::run(argc, argv, std::cout, std::cerr); }
