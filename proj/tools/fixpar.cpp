#include "fixpar/cli.hpp"

int main(int argc, char** argv) { return fixpar::cli::run(argc, argv); }
