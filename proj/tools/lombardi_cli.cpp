#include "lombardi/cli.hpp"

int main(int argc, char** argv) { return lombardi::cli_main(argc, argv); }
