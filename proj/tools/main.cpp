#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) {
    return affpr::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
