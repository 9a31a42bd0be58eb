#include "fkmc/cli.hpp"

int main(int argc, char** argv) { return fkmc::cli::run_cli(argc, argv); }
