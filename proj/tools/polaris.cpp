#include "polaris/cli.hpp"

int main(int argc, char** argv) { return polaris::run(argc, argv); }
