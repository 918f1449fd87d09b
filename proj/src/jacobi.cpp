#include "qkz/jacobi.hpp"

#include "qkz/modular.hpp"

namespace qkz::jac {

JacobiFourier JacobiFourier::from_qseries(const QSeries& f, std::optional<BiGrade> grade) {
    std::vector<SPoly> cs(f.coeffs().size());
    for (size_t i = 0; i < cs.size(); ++i) cs[i] = SPoly::monomial(kSVar, 0, f.coeffs()[i]);
    return JacobiFourier(QSPoly(kQVar, f.valuation(), std::move(cs), f.truncation_order()), kInfOrder, grade);
}

int JacobiFourier::s_min_support() const {
    int lo = 0;
    bool any = false;
    for (const auto& c : body_.coeffs()) {
        if (c.is_zero()) continue;
        lo = any ? std::min(lo, c.min_exp()) : c.min_exp();
        any = true;
    }
    return any ? lo : 0;
}

void JacobiFourier::clip_() {
    if (exact()) return;
    body_ = body_.map_coeffs([&](int, const SPoly& c) { return c.clip(-kInfOrder, s_upper_); });
}

JacobiFourier operator+(const JacobiFourier& a, const JacobiFourier& b) {
    std::optional<BiGrade> g;
    if (a.grade_ && b.grade_ && *a.grade_ == *b.grade_) g = a.grade_;
    if (a.is_zero() && a.exact()) g = b.grade_;
    if (b.is_zero() && b.exact()) g = a.grade_;
    return JacobiFourier(a.body_ + b.body_, std::min(a.s_upper_, b.s_upper_), g);
}

JacobiFourier operator*(const JacobiFourier& a, const JacobiFourier& b) {
    std::optional<BiGrade> g;
    if (a.grade_ && b.grade_) g = BiGrade{a.grade_->weight + b.grade_->weight, a.grade_->index2 + b.grade_->index2};
    int upper = std::min(order_add(a.s_upper_, b.s_min_support()), order_add(b.s_upper_, a.s_min_support()));
    return JacobiFourier(a.body_ * b.body_, upper, g);
}

JacobiFourier JacobiFourier::dz() const {
    QSPoly out = body_.map_coeffs([](int, const SPoly& c) {
        return c.map_coeffs([](int j, const Rational& v) { return v * Rational(j, 2); });
    });
    std::optional<BiGrade> g;
    if (grade_) g = BiGrade{grade_->weight + 1, grade_->index2};
    return JacobiFourier(std::move(out), s_upper_, g);
}

JacobiFourier JacobiFourier::dtau() const {
    QSPoly out = body_.map_coeffs([](int n, const SPoly& c) { return c.scalar_mul(Rational(n)); });
    std::optional<BiGrade> g;
    if (grade_) g = BiGrade{grade_->weight + 2, grade_->index2};
    return JacobiFourier(std::move(out), s_upper_, g);
}

bool JacobiFourier::has_parity(int sign, int q_from) const {
    for (size_t i = 0; i < body_.coeffs().size(); ++i) {
        if (body_.valuation() + static_cast<int>(i) < q_from) continue;
        const SPoly& c = body_.coeffs()[i];
        for (const auto& [j, v] : c.terms()) {
            if (!exact() && (j > s_upper_ || -j > s_upper_)) continue;
            Rational mirror = c.coeff(-j);
            if (v != mirror.scalar_mul(Rational(sign))) return false;
        }
    }
    return true;
}

JacobiFourier JacobiFourier::flip_s() const {
    if (!exact()) throw precondition_error("flip_s: windowed object");
    return JacobiFourier(body_.map_coeffs([](int, const SPoly& c) { return c.flip(); }), kInfOrder, grade_);
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

JacobiFourier theta_fourier(int q_order) {
    SPoly lead(kSVar);
    lead.add_term(1, Rational(1));
    lead.add_term(-1, Rational(-1));
    QSPoly body = QSPoly::monomial(kQVar, 0, lead).truncate(q_order);
    for (int m = 1; m < q_order; ++m) {
        for (int e : {2, -2}) {
            QSPoly factor = QSPoly::ring_one().truncate(q_order);
            factor = factor + QSPoly::monomial(kQVar, m, SPoly::monomial(kSVar, e, Rational(-1))).truncate(q_order);
            body = body * factor;
        }
    }
    QSeries denom = modular::euler_product_pow(-2, q_order);
    body = body * JacobiFourier::from_qseries(denom).body();
    return JacobiFourier(std::move(body), kInfOrder, BiGrade{-1, 1});
}

ZQSeries theta_taylor(int z_order, int q_order, const std::string& var) {
    // z * exp(-2 sum_{k >= 2 even} G_k z^k / k!)
    int arg_order = std::max(2, z_order - 1);
    std::vector<QSeries> arg(static_cast<size_t>(arg_order - 2));
    for (int k = 2; k < arg_order; k += 2)
        arg[static_cast<size_t>(k - 2)] =
            modular::eisenstein_G(k, q_order).scalar_mul(Rational(-2) / Rational::factorial(static_cast<unsigned long>(k)));
    ZQSeries expo(var, 2, std::move(arg), arg_order);
    return expo.exp_series().shift(1);
}

JacobiFourier F_series(int q_order) {
    QSPoly body = QSPoly::zero_to_order(kQVar, q_order);
    for (int n = 1; n < q_order; ++n) {
        SPoly cn(kSVar);
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            Rational w = -Rational::pow(Rational(n / d), 3);
            cn.add_term(2 * d, w);
            cn.add_term(0, Rational(-2) * w);
            cn.add_term(-2 * d, w);
        }
        body = body + QSPoly::monomial(kQVar, n, std::move(cn)).truncate(q_order);
    }
    return JacobiFourier(std::move(body), kInfOrder, BiGrade{2, 0});
}

ZQSeries F_series_taylor_route(int q_order, int z_order) {
    ZQSeries th = theta_taylor(z_order + 2, q_order);
    auto dtau = [](int, const QSeries& c) { return c.euler_derive([](int n) { return Rational(n); }); };
    ZQSeries d2 = th.map_coeffs(dtau).map_coeffs(dtau);
    return (d2 * th.invert()).truncate(z_order);
}

JacobiFourier A_fourier(int q_order, int s_window) {
    if (s_window < 2 * q_order + 2) throw window_error("A_fourier: s_window too small for the q window");
    QSPoly body = QSPoly::zero_to_order(kQVar, q_order);
    SPoly c0(kSVar);
    c0.add_term(0, Rational(-1, 2));
    for (int m = 1; 2 * m <= s_window; ++m) c0.add_term(2 * m, Rational(-1));
    body = body + QSPoly::monomial(kQVar, 0, std::move(c0)).truncate(q_order);
    for (int n = 1; n < q_order; ++n) {
        SPoly cn(kSVar);
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            cn.add_term(-2 * d, Rational(1));
            cn.add_term(2 * d, Rational(-1));
        }
        body = body + QSPoly::monomial(kQVar, n, std::move(cn)).truncate(q_order);
    }
    return JacobiFourier(std::move(body), s_window, BiGrade{1, 0});
}

JacobiFourier wp_fourier(int q_order, int s_window) {
    if (s_window < 2 * q_order + 2) throw window_error("wp_fourier: s_window too small for the q window");
    QSPoly body = QSPoly::zero_to_order(kQVar, q_order);
    SPoly c0(kSVar);
    c0.add_term(0, Rational(1, 12));
    for (int n = 1; 2 * n <= s_window; ++n) c0.add_term(2 * n, Rational(n));
    body = body + QSPoly::monomial(kQVar, 0, std::move(c0)).truncate(q_order);
    for (int d = 1; d < q_order; ++d) {
        SPoly cd(kSVar);
        for (int k = 1; k <= d; ++k) {
            if (d % k != 0) continue;
            cd.add_term(2 * k, Rational(k));
            cd.add_term(0, Rational(-2 * k));
            cd.add_term(-2 * k, Rational(k));
        }
        body = body + QSPoly::monomial(kQVar, d, std::move(cd)).truncate(q_order);
    }
    return JacobiFourier(std::move(body), s_window, BiGrade{2, 0});
}

JacobiFourier wp_prime_fourier(int q_order, int s_window) {
    return wp_fourier(q_order, s_window).dz().with_grade(BiGrade{3, 0});
}

// ---------------------------------------------------------------------------
// The x-engine
// ---------------------------------------------------------------------------

namespace {
QSPoly lift_qseries(const QSeries& f) { return JacobiFourier::from_qseries(f).body(); }
}  // namespace

XSeries theta_ratio_power(int m, int x_order, int q_order) {
    if (m < 1) throw precondition_error("theta_ratio_power: m >= 1");
    if (x_order < m + 1) throw precondition_error("theta_ratio_power: x_order must be >= m + 1");
    const int X = x_order + 1;
    JacobiFourier th = theta_fourier(q_order);
    // Theta(x+z) = sum_k x^k / k! D_z^k Theta(z)
    std::vector<QSPoly> shifted(static_cast<size_t>(X));
    JacobiFourier dk = th;
    for (int k = 0; k < X; ++k) {
        shifted[static_cast<size_t>(k)] = dk.body().scalar_mul(Rational(1) / Rational::factorial(static_cast<unsigned long>(k)));
        dk = dk.dz();
    }
    XSeries theta_xz("x", 0, std::move(shifted), X);
    // Theta(x) as an x-series with plain q-series coefficients.
    ZQSeries th_x = theta_taylor(X, q_order, "x");
    std::vector<QSPoly> tx(th_x.coeffs().size());
    for (size_t i = 0; i < tx.size(); ++i) tx[i] = lift_qseries(th_x.coeffs()[i]);
    XSeries theta_x("x", th_x.valuation(), std::move(tx), th_x.truncation_order());
    XSeries f = theta_xz * theta_x.invert();
    return pow_series(f, m);
}

YSeries theta_ratio_z(int x_order, int z_order, int q_order) {
    const int X = x_order + 2;
    ZQSeries th = theta_taylor(z_order + X, q_order);
    std::vector<ZQSeries> shifted(static_cast<size_t>(X));
    ZQSeries dk = th;
    for (int k = 0; k < X; ++k) {
        shifted[static_cast<size_t>(k)] = dk.scalar_mul(Rational(1) / Rational::factorial(static_cast<unsigned long>(k)));
        dk = dk.derivative();
    }
    YSeries theta_xz("x", 0, std::move(shifted), X);
    ZQSeries th_x = theta_taylor(X, q_order, "x");
    std::vector<ZQSeries> tx(th_x.coeffs().size());
    for (size_t i = 0; i < tx.size(); ++i) tx[i] = zq_constant(th_x.coeffs()[i]);
    YSeries theta_x("x", th_x.valuation(), std::move(tx), th_x.truncation_order());
    return theta_xz * theta_x.invert();
}

JacobiFourier residue(const XSeries& a) {
    if (a.window_valuation() > -1) throw precondition_error("residue: valuation must be <= -1");
    return JacobiFourier(a.coeff(-1));
}

ZQSeries fourier_to_taylor(const JacobiFourier& a, int z_order) {
    if (!a.exact()) throw precondition_error("fourier_to_taylor: windowed object");
    const QSPoly& body = a.body();
    int q_lo = body.valuation();
    int q_hi = q_lo + static_cast<int>(body.coeffs().size());
    std::vector<std::vector<Rational>> acc(
        static_cast<size_t>(z_order),
        std::vector<Rational>(static_cast<size_t>(std::max(0, q_hi - q_lo)), Rational(0)));
    for (int n = q_lo; n < q_hi; ++n) {
        for (const auto& [j, v] : body.coeffs()[static_cast<size_t>(n - q_lo)].terms()) {
            Rational x(j, 2), p(1);
            for (int t = 0; t < z_order; ++t) {
                acc[static_cast<size_t>(t)][static_cast<size_t>(n - q_lo)] += v * p;
                p = p * x * Rational(1, t + 1);
            }
        }
    }
    std::vector<QSeries> zs(static_cast<size_t>(z_order));
    for (int t = 0; t < z_order; ++t)
        zs[static_cast<size_t>(t)] = QSeries(kQVar, q_lo, std::move(acc[static_cast<size_t>(t)]), body.truncation_order());
    return ZQSeries(kZVar, 0, std::move(zs), z_order);
}

ZQSeries zq_constant(const QSeries& f) {
    if (f.is_zero() && f.exact()) return ZQSeries();
    return ZQSeries::monomial(kZVar, 0, f);
}

}  // namespace qkz::jac
