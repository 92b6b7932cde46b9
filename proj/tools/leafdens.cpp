#include <leafdens/cli.hpp>

int main(int argc, char** argv) { return leafdens::cli::main(argc, argv); }
