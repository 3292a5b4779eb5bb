#include "ctdg/cli.hpp"

int main(int argc, char** argv) { return ctdg::cli_main(argc, argv); }
