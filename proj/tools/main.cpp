#include <iostream>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"

int main(int argc, char** argv) {
  using namespace invscheme::cli;
  try {
    const auto cfg = parse_command_line(argc, argv);
    if (!cfg) return 0;
    return run(*cfg, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
}
