#include "lacunary/cli.hpp"

int main(int argc, char** argv) { return lacunary::run_cli(argc, argv); }
