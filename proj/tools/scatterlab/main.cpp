#include <iostream>

#include "scatterlab/app.hpp"

int main(int argc, char** argv) { return scatterlab::run_app(argc, argv, std::cout, std::cerr); }
