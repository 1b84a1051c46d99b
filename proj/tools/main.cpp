#include <iostream>
#include <vector>

#include "qibound/cli.hpp"
#include "qibound/errors.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto config = qibound::cli::parse_command_line(args);
    return qibound::cli::run(config);
  } catch (const qibound::Error& e) {
    std::cerr << "{\"error\":\"" << e.what() << "\",\"exit_code\":" << e.exit_code() << "}"
              << std::endl;
    return e.exit_code();
  }
}
