#include "cli_app.hpp"

int main(int argc, char** argv) {
  return steady::cli::main(std::vector<std::string>(argv + 1, argv + argc));
}
