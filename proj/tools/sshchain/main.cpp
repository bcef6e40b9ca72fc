#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) { return sshchain::cli::main(argc, argv, std::cout, std::cerr); }
