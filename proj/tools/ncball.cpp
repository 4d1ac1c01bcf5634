#include "ncball_cli.hpp"

int main(int argc, char** argv) { return ncball::cli::run(argc, argv, std::cout, std::cerr); }
