#include "nlchain/cli.hpp"

int main(int argc, char** argv) { return nlchain::run_main(argc, argv); }
