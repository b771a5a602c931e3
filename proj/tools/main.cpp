#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = mealy::cli::run(args);
  if (!result.help.empty()) (result.status == mealy::cli::Status::ok ? std::cout : std::cerr) << result.help;
  if (!result.payload.is_null()) std::cout << result.payload.dump(2) << "\n";
  return mealy::cli::exit_code(result.status);
}
