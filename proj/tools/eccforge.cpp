#include "eccforge/cli.hpp"

int main(int argc, char** argv) { return eccforge::cli::run(argc, argv); }
