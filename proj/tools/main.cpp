#include "icd/cli.hpp"

int main(int argc, char** argv) { return icd::run_cli(argc, argv); }
