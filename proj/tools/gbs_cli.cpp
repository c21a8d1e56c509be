#include "gbs/cli.hpp"

int main(int argc, char** argv) { return gbs::cli::run(argc, argv); }
