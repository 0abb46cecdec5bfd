#include "qmc/cli.hpp"

#include <exception>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  try {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return qmc::run_cli(qmc::parse_args(args));
  } catch (const qmc::CliExit& e) {
    (e.code == 0 ? std::cout : std::cerr) << e.message;
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
