#include <iostream>
#include <string>
#include <vector>

#include "zp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = zp::cli::dispatch(args);
  std::cout << result.payload;
  for (const auto& d : result.diagnostics) {
    std::cerr << d;
    if (!d.empty() && d.back() != '\n') std::cerr << '\n';
  }
  return result.exit_code;
}
