#pragma once

#include <random>

#include "qkz/series.hpp"

namespace qkz::testutil {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed5eedULL);
    return gen;
}

inline Rational random_rational(int num_bound = 9, int den_bound = 9) {
    std::uniform_int_distribution<int> num(-num_bound, num_bound);
    std::uniform_int_distribution<int> den(1, den_bound);
    return Rational(num(rng()), den(rng()));
}

inline QSeries random_qseries(int val_lo = -2, int val_hi = 2, int len = 6) {
    std::uniform_int_distribution<int> vd(val_lo, val_hi);
    int val = vd(rng());
    std::vector<Rational> cs(static_cast<size_t>(len));
    for (auto& c : cs) c = random_rational();
    return QSeries(kQVar, val, std::move(cs), val + len);
}

inline QSeries random_unit_series(int len = 7) {
    std::uniform_int_distribution<int> vd(-2, 2);
    int val = vd(rng());
    std::vector<Rational> cs(static_cast<size_t>(len));
    for (auto& c : cs) c = random_rational();
    while (cs[0].is_zero()) cs[0] = random_rational();
    return QSeries(kQVar, val, std::move(cs), val + len);
}

inline SPoly random_spoly(int width = 3) {
    SPoly p(kSVar);
    std::uniform_int_distribution<int> ed(-width, width);
    for (int t = 0; t < 3; ++t) p.add_term(ed(rng()), random_rational());
    return p;
}

inline QSPoly random_qspoly(int len = 5) {
    std::uniform_int_distribution<int> vd(0, 2);
    int val = vd(rng());
    std::vector<SPoly> cs(static_cast<size_t>(len));
    for (auto& c : cs) c = random_spoly();
    return QSPoly(kQVar, val, std::move(cs), val + len);
}

}  // namespace qkz::testutil
