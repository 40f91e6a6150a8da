#include "cli.hpp"

int main(int argc, char** argv) { return solfree::cli::cli_dispatch(argc, argv); }
