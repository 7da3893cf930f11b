#include <string>
#include <vector>

#include "bsmls/cli.hpp"

int main(int argc, char** argv) {
    return bsmls::cli::run_cli(std::vector<std::string>(argv, argv + argc));
}
