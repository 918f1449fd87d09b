#include "qkz/kz.hpp"

#include "qkz/modular.hpp"

namespace qkz::kz {

FracQSeries preset_eta2(int q_order) {
    int t_order = 24 * q_order;
    QSeries prod = modular::euler_product_pow(-2, t_order, 24);
    FracQSeries r(24, QSeries("t", prod.valuation(), prod.coeffs(), prod.truncation_order()));
    r.body = r.body.shift(-2).truncate(t_order);
    return r.normalize();
}

FracQSeries preset_eta1eta2(int q_order) {
    int t_order = 24 * q_order;
    QSeries p1 = modular::euler_product_pow(-1, t_order, 24);
    QSeries p2 = modular::euler_product_pow(-1, t_order, 48);
    QSeries prod = (p1 * p2).truncate(t_order);
    FracQSeries r(24, QSeries("t", prod.valuation(), prod.coeffs(), prod.truncation_order()));
    r.body = r.body.shift(-3).truncate(t_order);
    return r.normalize();
}

SSeries sseries_from_spoly(const SPoly& c, int s_window) {
    if (c.is_zero()) return SSeries::zero_to_order(kSVar, s_window + 1);
    int lo = c.min_exp();
    std::vector<Rational> cs(static_cast<size_t>(std::max(0, s_window + 1 - lo)), Rational(0));
    for (const auto& [e, v] : c.terms())
        if (e <= s_window) cs[static_cast<size_t>(e - lo)] = v;
    return SSeries(kSVar, lo, std::move(cs), s_window + 1);
}

FracSeries<SSeries> preset_theta(int q_order, int s_window) {
    jac::JacobiFourier th = jac::theta_fourier(q_order);
    std::vector<SSeries> cs(static_cast<size_t>(q_order));
    for (int n = 0; n < q_order; ++n) cs[static_cast<size_t>(n)] = sseries_from_spoly(th.c(n), s_window);
    return FracSeries<SSeries>(1, TruncatedSeries<SSeries>("t", 0, std::move(cs), q_order));
}

TorsionSpecialization specialize_torsion_point(const jac::JacobiFourier& f, const Rational& a, bool b_half) {
    if (!f.exact()) throw precondition_error("specialize_torsion_point: windowed object");
    if (a.sgn() < 0 || a >= Rational(1)) throw precondition_error("specialize_torsion_point: need 0 <= a < 1");
    const QSPoly& body = f.body();
    int q_lo = body.valuation();
    int N = body.truncation_order();
    // Index parity: all s-exponents share it.
    int parity = -1;
    int idx_bound = f.grade() ? f.grade()->index2 : 0;
    for (int n = q_lo; n < q_lo + static_cast<int>(body.coeffs().size()); ++n) {
        SPoly cn = body.coeff(n);
        for (const auto& [j, v] : cn.terms()) {
            int p = ((j % 2) + 2) % 2;
            if (parity == -1) parity = p;
            if (p != parity) throw precondition_error("specialize_torsion_point: mixed s-parity");
            idx_bound = std::max(idx_bound, std::abs(j) - 2 * n);
        }
    }
    if (parity == -1) parity = 0;
    long pnum = a.num_long(), pden = a.den_long();
    const int lattice = static_cast<int>(2 * pden);
    // s^j -> i^{j b_half 2} q^{a j / 2}: t-exponent 2 r n + p j on the
    // (1/2r) lattice. Coefficients at or beyond the reach of the unknown
    // q-tail are dropped (support bound |j| <= 2n + index2).
    long t_min_unknown = 2 * pden * N - pnum * (2L * N + idx_bound);
    std::map<long, Rational> acc;
    for (int n = q_lo; n < N; ++n) {
        SPoly cn = body.coeff(n);
        for (const auto& [j, v] : cn.terms()) {
            long t = 2L * pden * n + pnum * j;
            if (t >= t_min_unknown) continue;
            Rational sign(1);
            if (b_half) {
                // i^j = i^{parity} * (-1)^{(j - parity)/2}
                long half = (j - parity) / 2;
                if (half % 2 != 0) sign = Rational(-1);
            }
            acc[t] += v * sign;
        }
    }
    long lo = t_min_unknown;
    if (!acc.empty()) lo = std::min(lo, acc.begin()->first);
    std::vector<Rational> cs(static_cast<size_t>(std::max<long>(0, t_min_unknown - lo)), Rational(0));
    for (const auto& [t, v] : acc) cs[static_cast<size_t>(t - lo)] = v;
    TorsionSpecialization out;
    out.phase_quarter = b_half ? parity : 0;
    out.series =
        FracQSeries(lattice, QSeries("t", static_cast<int>(lo), std::move(cs), static_cast<int>(t_min_unknown)))
            .normalize();
    return out;
}

}  // namespace qkz::kz
