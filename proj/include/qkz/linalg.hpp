#pragma once

#include <optional>
#include <vector>

#include "qkz/rational.hpp"

namespace qkz {

// Result of an exact overdetermined solve.
struct SolveResult {
    std::vector<Rational> x;
    bool unique = false;      // full column rank
    bool consistent = false;  // every equation satisfied
};

// Gaussian elimination over Q for A x = b with rows >= cols. Surplus rows act
// as consistency checks: `consistent` is false if any equation fails.
inline SolveResult solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const size_t rows = a.size();
    const size_t cols = rows == 0 ? 0 : a[0].size();
    SolveResult res;
    std::vector<size_t> pivot_row(cols, SIZE_MAX);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rational inv = a[r][c].inverse();
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rational f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_row[c] = r;
        ++r;
    }
    res.unique = true;
    for (size_t c = 0; c < cols; ++c)
        if (pivot_row[c] == SIZE_MAX) res.unique = false;
    res.x.assign(cols, Rational(0));
    if (res.unique)
        for (size_t c = 0; c < cols; ++c) res.x[c] = b[pivot_row[c]];
    res.consistent = true;
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) res.consistent = false;
    return res;
}

}  // namespace qkz
