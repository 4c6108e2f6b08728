#pragma once

namespace ninls::cli {

// Parses argv and dispatches; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace ninls::cli
