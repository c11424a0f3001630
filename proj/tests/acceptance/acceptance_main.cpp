// Acceptance suite: runs every certification criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero if
// any criterion fails. Placeholder: criteria filled in progressively.

#include <cstdio>

int main() {
    std::printf("acceptance: placeholder\n");
    return 0;
}
