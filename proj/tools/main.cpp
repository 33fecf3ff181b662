#include "menger/cli.hpp"

int main(int argc, char** argv) { return menger::cli::run(argc, argv); }
