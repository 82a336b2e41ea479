#include <cstdio>

int main() {
  std::puts("qcert: command-line driver not wired up yet");
  return 2;
}
