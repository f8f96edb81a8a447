#include "besselint/cli.hpp"

int main(int argc, char** argv) { return besselint::cli_main(argc, argv); }
