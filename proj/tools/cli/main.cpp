#include "commands.hpp"

int main(int argc, char** argv) { return graphmark::cli::run(argc, argv); }
