#include "kerrcat/cli.hpp"

int main(int argc, char** argv) { return kerrcat::cli_main(argc, argv); }
