#include "floquet_cli/run.hpp"

int main(int argc, char** argv) { return floquet::cli::run_cli(argc, argv); }
