#include "spade/cli.hpp"

int main(int argc, char** argv) { return spade::cli::run(argc, argv); }
