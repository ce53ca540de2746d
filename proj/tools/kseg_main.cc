#include "kseg/cli.h"

int main(int argc, char** argv) { return kseg::cli::run(argc, argv); }
