// Placeholder main; subcommands are filled in with the harness module.
#include <cstdio>

int main() {
  std::puts("biassembly: cli not wired yet");
  return 1;
}
