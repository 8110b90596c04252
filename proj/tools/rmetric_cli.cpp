#include "rmetric/cli.hpp"

int main(int argc, char** argv) { return rmetric::cli::main_entry(argc, argv); }
