#include <cstdio>

int main() {
  std::puts("fragmenta: placeholder");
  return 0;
}
