#include "cli.hpp"

int main(int argc, char** argv) { return qcrypt::cli::run_cli(argc, argv); }
