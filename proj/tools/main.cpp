#include "tfcop/cli.hpp"

int main(int argc, char** argv) { return tfcop::cli::run(argc, argv); }
