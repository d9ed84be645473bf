#include "ptwell/cli.hpp"

int main(int argc, char** argv) { return ptwell::cli_main(argc, argv); }
