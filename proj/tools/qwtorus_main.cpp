#include <iostream>

#include "qwtorus/run_config.hpp"

int main(int argc, char** argv) {
    return qwtorus::cli::main_entry(argc, argv, std::cout, std::cerr);
}
