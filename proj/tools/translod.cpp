#include "translod/cli.hpp"

int main(int argc, char** argv) { return translod::cli::run(argc, argv); }
