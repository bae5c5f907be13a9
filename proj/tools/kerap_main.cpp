#include "kerap/cli.hpp"

int main(int argc, char** argv) { return kerap::cli::run(argc, argv); }
