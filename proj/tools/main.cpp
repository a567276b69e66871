#include "minfilter/cli_app.hpp"

int main(int argc, char** argv) { return minfilter::cli::run(argc, argv); }
