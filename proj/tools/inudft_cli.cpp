#include "inudft/cli.hpp"

int main(int argc, char** argv) { return inudft::cli_main(argc, argv); }
