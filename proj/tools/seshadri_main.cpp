#include "sesh/cli.hpp"

int main(int argc, char** argv) { return sesh::cli::run(argc, argv); }
