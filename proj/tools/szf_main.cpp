#include "szf/cli.hpp"

int main(int argc, char** argv) { return szf::run_cli(argc, argv); }
