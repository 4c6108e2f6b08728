#include "cli/app.hpp"

int main(int argc, char** argv) { return ninls::cli::main_entry(argc, argv); }
