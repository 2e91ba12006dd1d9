#include "magskin/cli.hpp"

int main(int argc, char **argv) { return magskin::cli::main_entry(argc, argv); }
