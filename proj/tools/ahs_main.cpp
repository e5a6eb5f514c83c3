#include "ahs/cli.hpp"

int main(int argc, char** argv) { return ahs::cli::main_entry(argc, argv); }
