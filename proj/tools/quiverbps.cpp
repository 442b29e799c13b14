#include "quiverbps/cli.hpp"

int main(int argc, char** argv) { return qbps::run_cli(argc, argv); }
