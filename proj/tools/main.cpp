#include "heilbronn/cli.hpp"

int main(int argc, char** argv) { return heilbronn::cli::run(argc, argv); }
