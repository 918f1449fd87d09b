#include "qkz/modular.hpp"

#include <mutex>

#include "qkz/linalg.hpp"

namespace qkz::modular {

Rational bernoulli(int k) {
    static std::vector<Rational> cache = {Rational(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (k < 0) throw precondition_error("bernoulli: negative index");
    for (int n = static_cast<int>(cache.size()); n <= k; ++n) {
        Rational acc(0);
        for (int j = 0; j < n; ++j) acc += Rational::binomial(n + 1, j) * cache[j];
        cache.push_back(-acc / Rational(n + 1));
    }
    return cache[k];
}

Rational divisor_power_sum(int power, int n) {
    Rational acc(0);
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) acc += Rational::pow(Rational(d), power);
    return acc;
}

QSeries eisenstein_G(int k, int order) {
    if (k < 2 || k % 2 != 0) throw precondition_error("eisenstein: k must be even and >= 2");
    std::vector<Rational> cs(order);
    if (order > 0) cs[0] = -bernoulli(k) / Rational(2 * k);
    for (int n = 1; n < order; ++n) cs[n] = divisor_power_sum(k - 1, n);
    return QSeries(kQVar, 0, std::move(cs), order);
}

QSeries eisenstein_E(int k, int order) {
    QSeries g = eisenstein_G(k, order);
    return g.scalar_mul(-Rational(2 * k) / bernoulli(k));
}

QSeries euler_product_pow(int e, int order, int step) {
    if (order <= 0) return QSeries::zero_to_order(kQVar, order);
    std::vector<Rational> c(static_cast<size_t>(order), Rational(0));
    c[0] = Rational(1);
    int ae = e < 0 ? -e : e;
    for (int n = 1; n * step < order; ++n) {
        int m = n * step;
        for (int rep = 0; rep < ae; ++rep) {
            if (e > 0)
                for (int k = order - 1; k >= m; --k) c[static_cast<size_t>(k)] -= c[static_cast<size_t>(k - m)];
            else
                for (int k = m; k < order; ++k) c[static_cast<size_t>(k)] += c[static_cast<size_t>(k - m)];
        }
    }
    return QSeries(kQVar, 0, std::move(c), order);
}

QSeries delta(int order) { return euler_product_pow(24, order).shift(1).truncate(order); }

FracQSeries eta(int q_order) {
    int t_order = 24 * q_order;
    QSeries prod = euler_product_pow(1, t_order, 24);
    FracQSeries r(24, QSeries("t", prod.valuation(), prod.coeffs(), prod.truncation_order()));
    r.body = r.body.shift(1).truncate(t_order);
    return r;
}

// ---------------------------------------------------------------------------
// QuasiModularPoly
// ---------------------------------------------------------------------------

namespace {
int key_weight(const QuasiModularPoly::Key& k) { return 2 * k[0] + 4 * k[1] + 6 * k[2]; }
}  // namespace

QuasiModularPoly QuasiModularPoly::constant(Rational c) { return monomial({0, 0, 0}, std::move(c)); }
QuasiModularPoly QuasiModularPoly::gen(int which) {
    Key k{0, 0, 0};
    k[static_cast<size_t>(which)] = 1;
    return monomial(k, Rational(1));
}
QuasiModularPoly QuasiModularPoly::monomial(Key k, Rational c) {
    QuasiModularPoly p;
    if (!c.is_zero()) p.terms_.emplace(k, std::move(c));
    return p;
}

void QuasiModularPoly::add_term(Key k, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool QuasiModularPoly::is_homogeneous(int* weight_out) const {
    if (terms_.empty()) {
        if (weight_out) *weight_out = 0;
        return true;
    }
    int w = key_weight(terms_.begin()->first);
    for (const auto& [k, c] : terms_)
        if (key_weight(k) != w) return false;
    if (weight_out) *weight_out = w;
    return true;
}

int QuasiModularPoly::weight() const {
    int w = 0;
    if (!is_homogeneous(&w)) throw precondition_error("QuasiModularPoly: mixed weight");
    return w;
}

QuasiModularPoly QuasiModularPoly::operator-() const {
    QuasiModularPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}
QuasiModularPoly operator+(QuasiModularPoly a, const QuasiModularPoly& b) {
    for (const auto& [k, c] : b.terms_) a.add_term(k, c);
    return a;
}
QuasiModularPoly operator-(QuasiModularPoly a, const QuasiModularPoly& b) { return a + (-b); }
QuasiModularPoly operator*(const QuasiModularPoly& a, const QuasiModularPoly& b) {
    QuasiModularPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            r.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
    return r;
}
QuasiModularPoly QuasiModularPoly::scalar_mul(const Rational& c) const {
    QuasiModularPoly r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

QuasiModularPoly QuasiModularPoly::dG2() const {
    QuasiModularPoly r;
    for (const auto& [k, c] : terms_)
        if (k[0] > 0) r.add_term({k[0] - 1, k[1], k[2]}, c * Rational(k[0]));
    return r;
}

QSeries QuasiModularPoly::evaluate(int order) const {
    QSeries g2 = eisenstein_G(2, order), g4 = eisenstein_G(4, order), g6 = eisenstein_G(6, order);
    QSeries acc = QSeries::zero_to_order(kQVar, order);
    for (const auto& [k, c] : terms_) {
        QSeries m = QSeries::ring_one().truncate(order);
        for (int i = 0; i < k[0]; ++i) m *= g2;
        for (int i = 0; i < k[1]; ++i) m *= g4;
        for (int i = 0; i < k[2]; ++i) m *= g6;
        acc += m.scalar_mul(c);
    }
    return acc;
}

std::string QuasiModularPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    static const char* names[3] = {"G2", "G4", "G6"};
    for (const auto& [k, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")";
        for (int i = 0; i < 3; ++i) {
            if (k[static_cast<size_t>(i)] == 0) continue;
            out += "*";
            out += names[i];
            if (k[static_cast<size_t>(i)] > 1) out += "^" + std::to_string(k[static_cast<size_t>(i)]);
        }
    }
    return out;
}

std::vector<QuasiModularPoly::Key> weight_monomials(int weight, bool quasi) {
    std::vector<QuasiModularPoly::Key> out;
    if (weight < 0 || weight % 2 != 0) return out;
    for (int a = 0; 2 * a <= weight; ++a) {
        if (!quasi && a > 0) break;
        for (int b = 0; 2 * a + 4 * b <= weight; ++b) {
            int rem = weight - 2 * a - 4 * b;
            if (rem % 6 == 0) out.push_back({a, b, rem / 6});
        }
    }
    return out;
}

namespace {

// Recognition against an explicit monomial basis.
QuasiModularPoly recognize_against(const QSeries& f, const std::vector<QuasiModularPoly::Key>& basis,
                                   const std::string& what) {
    if (!f.exact() && f.truncation_order() < static_cast<int>(basis.size()) + 5)
        throw precondition_error(what + ": need at least basis+5 coefficients");
    if (f.valuation() < 0) throw recognition_error(what + ": q-Laurent input");
    int order = f.exact() ? static_cast<int>(basis.size()) + 5 + f.valuation() : f.truncation_order();
    if (basis.empty()) {
        if (f.truncate(order).is_zero()) return QuasiModularPoly();
        throw recognition_error(what + ": empty basis for nonzero input");
    }
    std::vector<std::vector<Rational>> rows(static_cast<size_t>(order),
                                            std::vector<Rational>(basis.size(), Rational(0)));
    std::vector<Rational> rhs(static_cast<size_t>(order), Rational(0));
    for (size_t j = 0; j < basis.size(); ++j) {
        QSeries col = QuasiModularPoly::monomial(basis[j], Rational(1)).evaluate(order);
        for (int n = 0; n < order; ++n) rows[static_cast<size_t>(n)][j] = col.coeff(n);
    }
    for (int n = 0; n < order; ++n) rhs[static_cast<size_t>(n)] = f.coeff(n);
    SolveResult sol = solve_exact(std::move(rows), std::move(rhs));
    if (!sol.unique) throw recognition_error(what + ": ambiguous system (basis not independent at this order)");
    if (!sol.consistent) throw recognition_error(what + ": inconsistent system (not quasi-modular of this weight)");
    QuasiModularPoly out;
    for (size_t j = 0; j < basis.size(); ++j) out.add_term(basis[j], sol.x[j]);
    return out;
}

}  // namespace

QuasiModularPoly recognize_quasimodular(const QSeries& f, int weight) {
    return recognize_against(f, weight_monomials(weight, true), "recognize_quasimodular");
}

QuasiModularPoly express_G_high(int k) {
    if (k < 8 || k % 2 != 0) throw precondition_error("express_G_high: k must be even and >= 8");
    auto basis = weight_monomials(k, false);
    int order = static_cast<int>(basis.size()) + 5;
    return recognize_against(eisenstein_G(k, order), basis, "express_G_high");
}

QuasiModularPoly ramanujan_dtau(const QuasiModularPoly& f) {
    // Generator images derived in-repo by recognizing D_tau G_k.
    static std::array<QuasiModularPoly, 3> images;
    static std::once_flag once;
    std::call_once(once, [] {
        for (int i = 0; i < 3; ++i) {
            int k = 2 * (i + 1);
            auto basis = weight_monomials(k + 2, true);
            int order = static_cast<int>(basis.size()) + 6;
            QSeries dg = eisenstein_G(k, order).euler_derive([](int n) { return Rational(n); });
            images[static_cast<size_t>(i)] = recognize_against(dg, basis, "ramanujan_dtau");
        }
    });
    QuasiModularPoly out;
    for (const auto& [k, c] : f.terms()) {
        for (int i = 0; i < 3; ++i) {
            if (k[static_cast<size_t>(i)] == 0) continue;
            QuasiModularPoly::Key rest = k;
            rest[static_cast<size_t>(i)] -= 1;
            out += QuasiModularPoly::monomial(rest, c * Rational(k[static_cast<size_t>(i)])) * images[static_cast<size_t>(i)];
        }
    }
    return out;
}

QSeries serre_derivative(const QSeries& f, int k) {
    int order = f.truncation_order();
    QSeries df = f.euler_derive([](int n) { return Rational(n); });
    return df - (eisenstein_E(2, order) * f).scalar_mul(Rational(k, 12));
}

}  // namespace qkz::modular
