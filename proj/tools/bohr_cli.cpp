#include "bohr/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    const bohr::CommandResult result = bohr::run_command(std::vector<std::string>(argv + 1, argv + argc));
    if (!result.text.empty()) {
        std::cout << result.text;
    } else {
        std::cout << result.report.dump(2) << '\n';
    }
    return result.exit_code;
}
