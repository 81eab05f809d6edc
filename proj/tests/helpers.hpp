#pragma once

// Shared fixtures: the worked algebras the suites keep coming back to.

#include "extdim/algebra_io.hpp"

#include <random>
#include <string>

namespace testing_helpers {

inline std::string a2_text(const std::string& field = "Q") {
    return "field " + field + "\nvertices 2\narrow a : 1 -> 2\n";
}

inline std::string a3_text(const std::string& field = "Q") {
    return "field " + field + "\nvertices 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n";
}

// One-point algebra with n >= 1 anticommuting square-zero loops.
inline std::string exterior_text(int n, const std::string& field = "Q") {
    std::string s = "field " + field + "\nvertices 1\n";
    for (int i = 1; i <= n; ++i)
        s += "arrow x" + std::to_string(i) + " : 1 -> 1\n";
    for (int i = 1; i <= n; ++i)
        s += "relation x" + std::to_string(i) + ".x" + std::to_string(i) + "\n";
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            s += "relation x" + std::to_string(i) + ".x" + std::to_string(j) + " + x" +
                 std::to_string(j) + ".x" + std::to_string(i) + "\n";
    return s;
}

// The 2n+1 vertex family: a long top row 1 -> 2 -> ... -> n, a lower row
// 1 -> n+1 -> ... -> 2n-1 whose consecutive composites vanish, and two extra
// sinks 2n, 2n+1 hanging off vertex 1.
inline std::string family_text(int n, const std::string& field = "Q") {
    auto arrow = [](int idx, int s, int t) {
        return "arrow a" + std::to_string(idx) + " : " + std::to_string(s) + " -> " +
               std::to_string(t) + "\n";
    };
    std::string s = "field " + field + "\nvertices " + std::to_string(2 * n + 1) + "\n";
    for (int i = 1; i <= n - 1; ++i) s += arrow(i, i, i + 1);
    s += arrow(n + 1, 1, n + 1);
    for (int i = n + 2; i <= 2 * n - 1; ++i) s += arrow(i, i - 1, i);
    s += arrow(2 * n, 1, 2 * n);
    s += arrow(2 * n + 1, 1, 2 * n + 1);
    for (int i = n + 1; i <= 2 * n - 2; ++i)
        s += "relation a" + std::to_string(i) + ".a" + std::to_string(i + 1) + "\n";
    return s;
}

// Triangular-matrix example: rad^2 = 0, four vertices.
inline std::string tri_text(const std::string& field = "Q") {
    return "field " + field +
           "\nvertices 4\n"
           "arrow al : 4 -> 2\n"
           "arrow be : 2 -> 1\n"
           "arrow ga : 2 -> 1\n"
           "arrow de : 3 -> 2\n"
           "arrow la : 3 -> 4\n"
           "relation de.ga\n"
           "relation de.be\n"
           "relation la.al\n"
           "relation al.be\n"
           "relation al.ga\n";
}

// Deterministic PRNG draws (std::uniform_int_distribution is not portable).
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    long long below(long long n) {  // uniform in [0, n)
        return n <= 1 ? 0 : (long long)(eng() % (uint64_t)n);
    }
    long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }
};

}  // namespace testing_helpers
