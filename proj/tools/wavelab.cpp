#include <iostream>

#include "wavelab/report/run.hpp"

int main(int argc, char** argv) { return wavelab::report::main_entry(argc, argv, std::cout, std::cerr); }
