#include "qlg/cli.hpp"

int main(int argc, char** argv) { return qlg::cli::main_entry(argc, argv); }
