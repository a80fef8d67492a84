#include "cli.hpp"

int main(int argc, char** argv) { return framespec::cli::run(argc, argv); }
