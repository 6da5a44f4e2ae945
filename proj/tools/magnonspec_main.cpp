#include "magnonspec/cli.hpp"

int main(int argc, char** argv) { return magnonspec::cli::main(argc, argv); }
