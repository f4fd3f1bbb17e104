#include "smo/cli.hpp"

int main(int argc, char** argv) { return smo::cli::run(argc, argv); }
