#include <iostream>

#include "mumford/cli.hpp"

int main(int argc, char** argv) {
    return mumford::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
