#include "latred/experiments.hpp"

int main(int argc, char** argv) { return latred::run_cli(argc, argv); }
