#include "infrared/cli.hpp"

int main(int argc, char** argv) { return ir::cli_main(argc, argv); }
