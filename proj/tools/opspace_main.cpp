#include "opspace/cli.hpp"

int main(int argc, char** argv) { return opspace::run_cli(argc, argv); }
