#include "cli.hpp"

int main(int argc, char** argv) { return qes::cli::main(argc, argv); }
