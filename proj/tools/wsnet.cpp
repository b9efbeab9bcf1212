#include "wsnet/cli.hpp"

int main(int argc, char** argv) { return wsnet::cli::run(argc, argv); }
