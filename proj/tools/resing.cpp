#include "resing/cli.hpp"

int main(int argc, char** argv) { return resing::cli::main(argc, argv); }
