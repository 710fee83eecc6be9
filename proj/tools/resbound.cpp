#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    resbound::cli::RunConfig cfg;
    if (auto code = resbound::cli::parse_args(argc, argv, cfg, std::cout, std::cerr)) return *code;
    return resbound::cli::run(cfg, std::cout, std::cerr);
}
