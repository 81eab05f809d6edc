#include <cstdio>
int main() { std::puts("extdim cli placeholder"); return 0; }
