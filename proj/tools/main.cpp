#include "arithinv/cli.hpp"

int main(int argc, char** argv) { return arithinv::cli::run_main(argc, argv); }
