#include <iostream>

#include "qres_cli/app.hpp"

int main(int argc, char** argv) { return qres::cli::run(argc, argv, std::cout, std::cerr); }
