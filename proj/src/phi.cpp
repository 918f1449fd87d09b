#include "qkz/phi.hpp"

#include <functional>
#include <mutex>
#include <tuple>

#include "qkz/linalg.hpp"

namespace qkz::phi {

using jac::BiGrade;

namespace {

SPoly index_constant(int m) {
    SPoly c(kSVar);
    c.add_term(m, Rational(1));
    c.add_term(-m, Rational(-1));
    return c;
}

const JacobiFourier& cached_F(int q_order) {
    static std::map<int, JacobiFourier> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(q_order);
    if (it == cache.end()) it = cache.emplace(q_order, jac::F_series(q_order)).first;
    return it->second;
}

JacobiFourier compute_ode(int m, int q_order) {
    if (m == 0) return JacobiFourier(QSPoly::zero_to_order(kQVar, q_order), kInfOrder, BiGrade{-1, 0});
    if (m < 0) return -compute_ode(-m, q_order);
    const JacobiFourier F = cached_F(q_order);
    std::vector<SPoly> c(static_cast<size_t>(q_order));
    c[0] = index_constant(m);
    Rational m2(static_cast<long>(m) * m);
    for (int n = 1; n < q_order; ++n) {
        SPoly acc(kSVar);
        for (int k = 1; k <= n; ++k) acc += F.c(k) * c[static_cast<size_t>(n - k)];
        c[static_cast<size_t>(n)] = acc.scalar_mul(m2 / Rational(static_cast<long>(n) * n));
    }
    return JacobiFourier(QSPoly(kQVar, 0, std::move(c), q_order), kInfOrder, BiGrade{-1, m});
}

}  // namespace

JacobiFourier ode(int m, int q_order) {
    static std::map<std::pair<int, int>, JacobiFourier> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({m, q_order});
        if (it != cache.end()) return it->second;
    }
    JacobiFourier r = compute_ode(m, q_order);
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(std::make_pair(m, q_order), std::move(r)).first->second;
}

JacobiFourier residue_method(int m, int q_order) {
    if (m < 1) throw precondition_error("residue_method: m >= 1");
    return jac::residue(jac::theta_ratio_power(m, m + 1, q_order)).with_grade(BiGrade{-1, m});
}

namespace {

// Sums prod(factors) / z(lambda) over partitions of `total` into parts of
// one fixed sign, aggregated by partition length. `factor(k)` is the series
// attached to a part of absolute size k; `sign` is the part sign entering
// the automorphism factor z(a) = prod_i i^{a_i} a_i!.
void partition_aggregate(int total, int sign, int q_order, const std::function<QSPoly(int)>& factor,
                         std::vector<QSPoly>& by_length) {
    by_length.assign(static_cast<size_t>(total + 1), QSPoly::zero_to_order(kQVar, q_order));
    std::function<void(int, int, const QSPoly&, int)> rec = [&](int rem, int max_part, const QSPoly& acc, int len) {
        for (int k = std::min(rem, max_part); k >= 1; --k) {
            QSPoly cur = acc;
            QSPoly fk = factor(k);
            // The j-th copy of part k divides by (sign * k * j).
            for (int j = 1; k * j <= rem; ++j) {
                cur = (cur * fk).scalar_mul(Rational(1, sign * k * j));
                if (rem - k * j == 0)
                    by_length[static_cast<size_t>(len + j)] += cur;
                else if (k > 1)
                    rec(rem - k * j, k - 1, cur, len + j);
            }
        }
    };
    rec(total, total, QSPoly::ring_one().truncate(q_order), 0);
}

}  // namespace

JacobiFourier partition_method(int m, int q_order) {
    if (m < 1) throw precondition_error("partition_method: m >= 1");
    auto pos_factor = [&](int k) {
        // (1 - p^k)/(1 - q^k) = (1 - s^{2k}) sum_j q^{jk}
        SPoly num(kSVar);
        num.add_term(0, Rational(1));
        num.add_term(2 * k, Rational(-1));
        std::vector<Rational> geo(static_cast<size_t>(q_order), Rational(0));
        for (int j = 0; j * k < q_order; ++j) geo[static_cast<size_t>(j * k)] = Rational(1);
        QSeries g(kQVar, 0, std::move(geo), q_order);
        return QSPoly::monomial(kQVar, 0, num).truncate(q_order) * JacobiFourier::from_qseries(g).body();
    };
    auto neg_factor = [&](int k) {
        // (1 - p^{-k})/(1 - q^{-k}) = (s^{-2k} - 1) q^k sum_j q^{jk}
        SPoly num(kSVar);
        num.add_term(-2 * k, Rational(1));
        num.add_term(0, Rational(-1));
        std::vector<Rational> geo(static_cast<size_t>(q_order), Rational(0));
        for (int j = 0; j * k < q_order; ++j) geo[static_cast<size_t>(j * k)] = Rational(1);
        QSeries g(kQVar, 0, std::move(geo), q_order);
        return (QSPoly::monomial(kQVar, 0, num).truncate(q_order) * JacobiFourier::from_qseries(g).body())
            .shift(k)
            .truncate(q_order);
    };

    QSPoly total = QSPoly::ring_one().truncate(q_order);  // empty partition
    Rational mr(m);
    for (int P = 1; P < q_order; ++P) {
        std::vector<QSPoly> pos, neg;
        partition_aggregate(P, 1, q_order, pos_factor, pos);
        partition_aggregate(P, -1, q_order, neg_factor, neg);
        QSPoly pos_sum = QSPoly::zero_to_order(kQVar, q_order);
        QSPoly neg_sum = QSPoly::zero_to_order(kQVar, q_order);
        for (size_t l = 1; l < pos.size(); ++l) pos_sum += pos[l].scalar_mul(Rational::pow(mr, static_cast<long>(l)));
        for (size_t l = 1; l < neg.size(); ++l) neg_sum += neg[l].scalar_mul(Rational::pow(mr, static_cast<long>(l)));
        total += pos_sum * neg_sum;
    }
    total = QSPoly::monomial(kQVar, 0, index_constant(m)).truncate(q_order) * total;
    return JacobiFourier(std::move(total), kInfOrder, BiGrade{-1, m});
}

JacobiFourier pair_ode(int m, int n, int q_order) {
    static std::map<std::tuple<int, int, int>, JacobiFourier> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({m, n, q_order});
        if (it != cache.end()) return it->second;
    }
    JacobiFourier pm = ode(m, q_order), pn = ode(n, q_order);
    JacobiFourier rhs =
        (pm * pn * cached_F(q_order)).scalar_mul(Rational(static_cast<long>(m) * n)) + pm.dtau() * pn.dtau();
    QSPoly body =
        rhs.body().map_coeffs([](int N, const SPoly& c) { return N == 0 ? SPoly(kSVar) : c.scalar_mul(Rational(1, N)); });
    JacobiFourier r(std::move(body), kInfOrder, BiGrade{0, std::abs(m) + std::abs(n)});
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(std::make_tuple(m, n, q_order), std::move(r)).first->second;
}

JacobiFourier pair_closed(int m, int n, int q_order) {
    if (m + n == 0) throw precondition_error("pair_closed: m + n must be nonzero");
    JacobiFourier pm = ode(m, q_order), pn = ode(n, q_order);
    return (pm * pn.dtau()).scalar_mul(Rational(m, m + n)) + (pm.dtau() * pn).scalar_mul(Rational(n, m + n));
}

JacobiFourier anomaly_dA(int m, int q_order) {
    if (m == 0) return JacobiFourier(QSPoly::zero_to_order(kQVar, q_order), kInfOrder, BiGrade{-2, 0});
    if (m < 0) return -anomaly_dA(-m, q_order);
    JacobiFourier acc(QSPoly::zero_to_order(kQVar, q_order), kInfOrder, BiGrade{-2, m});
    for (int i = 1; i < m; ++i) {
        int j = m - i;
        acc += (ode(i, q_order) * ode(j, q_order)).scalar_mul(Rational(static_cast<long>(m) * m, 2L * i * j));
    }
    return acc.with_grade(BiGrade{-2, m});
}

ZQSeries anomaly_dA_extension(int m, int q_order, int z_order) {
    ZQSeries base = jac::fourier_to_taylor(anomaly_dA(m, q_order), z_order);
    if (m >= 0) return base;
    ZQSeries zphi = taylor(m, q_order, z_order - 1).shift(1).truncate(z_order);
    return base - zphi.scalar_mul(Rational(m));
}

std::vector<std::pair<int, int>> signed_decompositions(int total) {
    std::vector<std::pair<int, int>> out;
    if (total > 0)
        for (int i = 1; i < total; ++i) out.emplace_back(i, total - i);
    else if (total < 0)
        for (int i = -1; i > total; --i) out.emplace_back(i, total - i);
    return out;
}

JacobiFourier anomaly_dA_pair(int m, int n, int q_order) {
    JacobiFourier acc(QSPoly::zero_to_order(kQVar, q_order), kInfOrder, BiGrade{-1, std::abs(m) + std::abs(n)});
    if (m + n != 0) acc += ode(m + n, q_order).scalar_mul(Rational(static_cast<long>(m) * n, m + n));
    for (auto [i, j] : signed_decompositions(m))
        acc += (pair_ode(i, n, q_order) * ode(j, q_order)).scalar_mul(Rational(std::abs(m), j));
    for (auto [i, j] : signed_decompositions(n))
        acc += (pair_ode(m, i, q_order) * ode(j, q_order)).scalar_mul(Rational(std::abs(n), j));
    return acc;
}

JacobiFourier anomaly_dG2_pair(int m, int n, int q_order) {
    return (ode(m, q_order) * ode(n, q_order)).scalar_mul(Rational(2));
}

bool recursion_check(int m, int n, int q_order) {
    if (m < 1 || n < 1) throw precondition_error("recursion_check: m, n >= 1");
    JacobiFourier pm = ode(m, q_order), pn = ode(n, q_order);
    JacobiFourier rhs = (pm.dz() * pn).scalar_mul(Rational(1, m)) + (pm * pn.dz()).scalar_mul(Rational(1, n));
    for (auto [i, j] : signed_decompositions(m))
        rhs += (pair_ode(i, n, q_order) * ode(j, q_order)).scalar_mul(Rational(1, i));
    for (auto [i, j] : signed_decompositions(n))
        rhs += (pair_ode(i, m, q_order) * ode(j, q_order)).scalar_mul(Rational(1, i));
    return ode(m + n, q_order) == rhs;
}

ZQSeries taylor(int m, int q_order, int z_order) { return jac::fourier_to_taylor(ode(m, q_order), z_order); }

YSeries generating_series(int y_order, int q_order, int z_order) {
    std::vector<ZQSeries> cs(static_cast<size_t>(std::max(0, y_order - 1)));
    for (int m = 1; m < y_order; ++m)
        cs[static_cast<size_t>(m - 1)] = taylor(m, q_order, z_order).scalar_mul(Rational(1, m));
    return YSeries("y", 1, std::move(cs), y_order);
}

bool inversion_check(int y_order, int q_order, int z_order) {
    YSeries g = generating_series(y_order, q_order, z_order);
    YSeries f = jac::theta_ratio_z(y_order, z_order, q_order);
    // x is a dummy variable: retag f in y for the composition.
    YSeries fx("y", f.valuation(), f.coeffs(), f.truncation_order());
    YSeries lhs = compose(fx, g);
    YSeries expected =
        YSeries::monomial("y", -1, jac::zq_constant(QSeries::ring_one().truncate(q_order)).truncate(z_order));
    if (lhs != expected) return false;

    // Lagrange route: the compositional inverse of 1/f is g.
    YSeries inv_f = fx.invert();
    if (lagrange_invert(inv_f) != g) return false;

    // Transported differential equation D_tau^2 g = F D_y^2 g.
    auto dtau_y = [](const YSeries& a) {
        return a.map_coeffs([](int, const ZQSeries& c) {
            return c.map_coeffs([](int, const QSeries& w) { return w.euler_derive([](int k) { return Rational(k); }); });
        });
    };
    YSeries lhs2 = dtau_y(dtau_y(g));
    ZQSeries Fz = jac::fourier_to_taylor(cached_F(q_order), z_order);
    YSeries rhs2 = g.euler_derive([](int k) { return Rational(static_cast<long>(k) * k); }) * YSeries::constant(Fz);
    return lhs2 == rhs2;
}

IndexPolyFamily polynomial_u(int q_order, int z_order) {
    const JacobiFourier F = cached_F(q_order);
    // T[mm][n] = sum over k_1+..+k_mm = n of F_{k_1}..F_{k_mm} /
    // (k_1^2 (k_1+k_2)^2 .. n^2), by tail recursion on the last part.
    int mm_max = q_order - 1;
    std::vector<std::vector<SPoly>> T(static_cast<size_t>(mm_max + 1),
                                      std::vector<SPoly>(static_cast<size_t>(q_order), SPoly(kSVar)));
    if (mm_max >= 1)
        for (int n = 1; n < q_order; ++n)
            T[1][static_cast<size_t>(n)] = F.c(n).scalar_mul(Rational(1, static_cast<long>(n) * n));
    for (int mm = 2; mm <= mm_max; ++mm)
        for (int n = mm; n < q_order; ++n) {
            SPoly acc(kSVar);
            for (int k = 1; k <= n - mm + 1; ++k)
                acc += F.c(k) * T[static_cast<size_t>(mm - 1)][static_cast<size_t>(n - k)];
            T[static_cast<size_t>(mm)][static_cast<size_t>(n)] = acc.scalar_mul(Rational(1, static_cast<long>(n) * n));
        }
    // u^{2mm} -> z-Taylor of sum_n T[mm][n] q^n; u^0 -> 1.
    std::map<int, ZQSeries> body;
    body[0] = jac::zq_constant(QSeries::ring_one().truncate(q_order)).truncate(z_order);
    for (int mm = 1; mm <= mm_max; ++mm) {
        std::vector<SPoly> cs(T[static_cast<size_t>(mm)].begin(), T[static_cast<size_t>(mm)].end());
        JacobiFourier jf(QSPoly(kQVar, 0, std::move(cs), q_order));
        if (jf.is_zero()) continue;
        body[2 * mm] = jac::fourier_to_taylor(jf, z_order);
    }
    // sinh factor: s^u - s^{-u} contributes u^t z^t / (2^{t-1} t!) for odd t.
    std::map<int, ZQSeries> sinh_part;
    for (int t = 1; t < z_order; t += 2) {
        Rational c = Rational(1) / (Rational::pow(Rational(2), t - 1) * Rational::factorial(static_cast<unsigned long>(t)));
        sinh_part[t] =
            ZQSeries::monomial(kZVar, t, QSeries::ring_one().truncate(q_order)).scalar_mul(c).truncate(z_order);
    }
    std::map<int, ZQSeries> phi_u;
    for (const auto& [tu, ts] : sinh_part)
        for (const auto& [bu, bs] : body) {
            ZQSeries prod = ts * bs;
            auto it = phi_u.find(tu + bu);
            if (it == phi_u.end())
                phi_u.emplace(tu + bu, std::move(prod));
            else
                it->second += prod;
        }
    IndexPolyFamily fam;
    for (const auto& [u, zs] : phi_u) {
        for (int k = 1; k < z_order; ++k) {
            if (k >= zs.truncation_order()) continue;
            QSeries c = zs.coeff(k);
            if (c.is_zero()) continue;
            if (u % 2 == 0) throw precondition_error("polynomial_u: even u-power appeared");
            if (u > k) throw precondition_error("polynomial_u: degree bound violated");
            fam.coeffs[k][u] = modular::recognize_quasimodular(c, k - 1);
        }
    }
    return fam;
}

PairPolyFamily pair_polynomial(int q_order, int z_order) {
    const int M = std::max(4, z_order - 2);
    std::map<std::pair<int, int>, ZQSeries> samples;
    for (int m = 1; m <= M; ++m)
        for (int n = 1; n <= M; ++n) samples[{m, n}] = jac::fourier_to_taylor(pair_ode(m, n, q_order), z_order);
    PairPolyFamily fam;
    for (int r = 2; r < z_order; ++r) {
        std::vector<std::pair<int, int>> monoms;
        for (int a = 2; a <= r - 2; ++a)
            for (int b = 2; a + b <= r; ++b)
                if ((a + b) % 2 == 0) monoms.emplace_back(a, b);
        if (monoms.empty()) {
            for (const auto& [mn, zs] : samples)
                if (!zs.coeff(r).is_zero()) throw precondition_error("pair_polynomial: unexpected low-order term");
            continue;
        }
        std::vector<std::vector<Rational>> A;
        A.reserve(samples.size());
        for (const auto& [mn, zs] : samples) {
            std::vector<Rational> row(monoms.size());
            for (size_t j = 0; j < monoms.size(); ++j)
                row[j] = Rational::pow(Rational(mn.first), monoms[j].first) *
                         Rational::pow(Rational(mn.second), monoms[j].second);
            A.push_back(std::move(row));
        }
        // One exact solve per q-exponent; surplus grid points are checks.
        std::vector<std::vector<Rational>> coeff_q(monoms.size(),
                                                   std::vector<Rational>(static_cast<size_t>(q_order), Rational(0)));
        for (int n = 0; n < q_order; ++n) {
            std::vector<Rational> rhs;
            rhs.reserve(samples.size());
            for (const auto& [mn, zs] : samples) rhs.push_back(zs.coeff(r).coeff(n));
            SolveResult sol = solve_exact(A, rhs);
            if (!sol.unique || !sol.consistent)
                throw precondition_error("pair_polynomial: interpolation failed at z^" + std::to_string(r));
            for (size_t j = 0; j < monoms.size(); ++j) coeff_q[j][static_cast<size_t>(n)] = sol.x[j];
        }
        for (size_t j = 0; j < monoms.size(); ++j) {
            QSeries c(kQVar, 0, std::move(coeff_q[j]), q_order);
            if (c.is_zero()) continue;
            fam.coeffs[r][monoms[j]] = modular::recognize_quasimodular(c, r);
        }
    }
    return fam;
}

}  // namespace qkz::phi
