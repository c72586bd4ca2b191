/// @file sheetlimit.cpp
/// @brief Command-line front end.
#include "sheetlimit/cli/commands.hpp"

int main(int argc, char** argv) { return sheetlimit::cli::main_entry(argc, argv); }
