#include <cstdio>

int main() {
  std::fprintf(stderr, "ctfrec: command line not wired up yet\n");
  return 1;
}
