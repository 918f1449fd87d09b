#include "qkz/qjring.hpp"

#include <mutex>

#include "qkz/linalg.hpp"
#include "qkz/phi.hpp"

namespace qkz::ring {

QJacExpr QJacExpr::gen(Gen g) {
    Key k{0, 0, 0, 0, 0, 0};
    k[static_cast<size_t>(g)] = 1;
    return monomial(k, Rational(1));
}

QJacExpr QJacExpr::monomial(Key k, Rational c) {
    QJacExpr e;
    if (!c.is_zero()) e.terms_.emplace(k, std::move(c));
    return e;
}

void QJacExpr::add_term(const Key& k, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int QJacExpr::key_weight(const Key& k) {
    int w = 0;
    for (int i = 0; i < 6; ++i) w += kGenWeight[static_cast<size_t>(i)] * k[static_cast<size_t>(i)];
    return w;
}

bool QJacExpr::is_homogeneous(int* weight_out, int* index2_out) const {
    if (terms_.empty()) {
        if (weight_out) *weight_out = 0;
        if (index2_out) *index2_out = 0;
        return true;
    }
    int w = key_weight(terms_.begin()->first);
    int i2 = key_index2(terms_.begin()->first);
    for (const auto& [k, c] : terms_)
        if (key_weight(k) != w || key_index2(k) != i2) return false;
    if (weight_out) *weight_out = w;
    if (index2_out) *index2_out = i2;
    return true;
}

int QJacExpr::weight() const {
    int w = 0, i2 = 0;
    if (!is_homogeneous(&w, &i2)) throw ring_error_t("QJacExpr: mixed weight");
    return w;
}
int QJacExpr::index2() const {
    int w = 0, i2 = 0;
    if (!is_homogeneous(&w, &i2)) throw ring_error_t("QJacExpr: mixed index");
    return i2;
}

QJacExpr QJacExpr::operator-() const {
    QJacExpr r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}
QJacExpr operator+(QJacExpr a, const QJacExpr& b) {
    for (const auto& [k, c] : b.terms_) a.add_term(k, c);
    return a;
}
QJacExpr operator*(const QJacExpr& a, const QJacExpr& b) {
    QJacExpr r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            QJacExpr::Key k;
            for (int i = 0; i < 6; ++i) k[static_cast<size_t>(i)] = ka[static_cast<size_t>(i)] + kb[static_cast<size_t>(i)];
            r.add_term(k, ca * cb);
        }
    return r;
}
QJacExpr QJacExpr::scalar_mul(const Rational& c) const {
    QJacExpr r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

std::string QJacExpr::to_string() const {
    if (terms_.empty()) return "0";
    static const char* names[6] = {"Theta", "A", "G2", "wp", "wp'", "G4"};
    std::string out;
    for (const auto& [k, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")";
        for (int i = 0; i < 6; ++i) {
            int e = k[static_cast<size_t>(i)];
            if (e == 0) continue;
            out += "*";
            out += names[i];
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

std::vector<QJacExpr::Key> basis_monomials(int weight, int index2) {
    std::vector<QJacExpr::Key> out;
    if (index2 < 0) return out;
    int rest = weight + index2;  // b + 2c + 2d + 3e + 4f
    if (rest < 0) return out;
    for (int f = 0; 4 * f <= rest; ++f)
        for (int e = 0; 4 * f + 3 * e <= rest; ++e)
            for (int d = 0; 4 * f + 3 * e + 2 * d <= rest; ++d)
                for (int c = 0; 4 * f + 3 * e + 2 * d + 2 * c <= rest; ++c) {
                    int b = rest - 4 * f - 3 * e - 2 * d - 2 * c;
                    out.push_back({index2, b, c, d, e, f});
                }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

struct GenPowers {
    std::array<std::map<int, JacobiFourier>, 6> pow;
    std::array<JacobiFourier, 6> base;
    int q_order = 0;

    explicit GenPowers(int q) : q_order(q) {
        int W = 14 * q + 40;
        base[kTheta] = jac::theta_fourier(q);
        base[kA] = jac::A_fourier(q, W);
        base[kG2] = JacobiFourier::from_qseries(modular::eisenstein_G(2, q));
        base[kWp] = jac::wp_fourier(q, W);
        base[kWpp] = jac::wp_prime_fourier(q, W);
        base[kG4] = JacobiFourier::from_qseries(modular::eisenstein_G(4, q));
    }

    const JacobiFourier& get(int g, int e) {
        auto& m = pow[static_cast<size_t>(g)];
        auto it = m.find(e);
        if (it != m.end()) return it->second;
        JacobiFourier v = e == 1 ? base[static_cast<size_t>(g)] : get(g, e - 1) * base[static_cast<size_t>(g)];
        return m.emplace(e, std::move(v)).first->second;
    }

    JacobiFourier eval_monomial(const QJacExpr::Key& k) {
        JacobiFourier acc;
        bool any = false;
        for (int g = 0; g < 6; ++g) {
            int e = k[static_cast<size_t>(g)];
            if (e == 0) continue;
            acc = any ? acc * get(g, e) : get(g, e);
            any = true;
        }
        if (!any) return JacobiFourier::from_qseries(QSeries::ring_one().truncate(q_order));
        return acc;
    }
};

JacobiFourier eval_with(GenPowers& gp, const QJacExpr& e, int q_order) {
    JacobiFourier acc(QSPoly::zero_to_order(kQVar, q_order));
    for (const auto& [k, c] : e.terms()) acc += gp.eval_monomial(k).scalar_mul(c);
    return acc;
}

QJacExpr recognize_with(GenPowers& gp, const JacobiFourier& f, int weight, int index2, int margin,
                        const std::string& what) {
    auto basis = basis_monomials(weight, index2);
    int q_order = std::min(gp.q_order, f.q_order());
    if (basis.empty()) {
        if (f.truncate_q(q_order).is_zero()) return QJacExpr();
        throw ring_error_t(what + ": empty basis for nonzero input");
    }
    std::vector<JacobiFourier> cols;
    cols.reserve(basis.size());
    int upper = f.s_upper();
    for (const auto& k : basis) {
        cols.push_back(gp.eval_monomial(k));
        upper = std::min(upper, cols.back().s_upper());
    }
    // Sample every (q, s) slot supported by a column or the target within
    // the common reliable upper bound; the lower tails are exact.
    std::map<std::pair<int, int>, size_t> row_of;
    auto note_support = [&](const JacobiFourier& jf) {
        int hi = std::min(q_order, jf.q_order());
        for (int n = std::max(0, jf.body().valuation()); n < hi; ++n) {
            SPoly cn = jf.c(n);
            for (const auto& [j, v] : cn.terms())
                if (j <= upper) row_of.emplace(std::make_pair(n, j), row_of.size());
        }
    };
    for (const auto& c : cols) note_support(c);
    note_support(f);
    const size_t rows = row_of.size(), ncols = basis.size();
    if (rows < ncols + static_cast<size_t>(margin))
        throw precondition_error(what + ": not enough reliable sample coefficients");
    std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(ncols, Rational(0)));
    std::vector<Rational> rhs(rows, Rational(0));
    for (const auto& [nj, r] : row_of) {
        for (size_t cidx = 0; cidx < ncols; ++cidx) A[r][cidx] = cols[cidx].c(nj.first).coeff(nj.second);
        rhs[r] = f.c(nj.first).coeff(nj.second);
    }
    SolveResult sol = solve_exact(std::move(A), std::move(rhs));
    if (!sol.unique) throw ring_error_t(what + ": ambiguous recognition system");
    if (!sol.consistent)
        throw ring_error_t(what + ": inconsistent (not in R at weight " + std::to_string(weight) + ", index2 " +
                           std::to_string(index2) + ")");
    QJacExpr out;
    for (size_t i = 0; i < ncols; ++i) out.add_term(basis[i], sol.x[i]);
    return out;
}

}  // namespace

JacobiFourier eval_to_fourier(const QJacExpr& e, int q_order) {
    GenPowers gp(q_order);
    return eval_with(gp, e, q_order);
}

QJacExpr recognize_in_R(const JacobiFourier& f, int weight, int index2, int margin) {
    GenPowers gp(std::max(4, std::min(f.q_order(), 9)));
    return recognize_with(gp, f, weight, index2, margin, "recognize_in_R");
}

// ---------------------------------------------------------------------------
// Derivation table
// ---------------------------------------------------------------------------

namespace {

struct Table {
    std::array<std::array<QJacExpr, 6>, 4> images;
};

size_t op_idx(Deriv op) { return static_cast<size_t>(op); }

QJacExpr derive_with(const Table& t, const QJacExpr& e, Deriv op) {
    const auto& img = t.images[op_idx(op)];
    QJacExpr out;
    for (const auto& [k, c] : e.terms()) {
        for (int g = 0; g < 6; ++g) {
            int ex = k[static_cast<size_t>(g)];
            if (ex == 0 || img[static_cast<size_t>(g)].is_zero()) continue;
            QJacExpr::Key rest = k;
            rest[static_cast<size_t>(g)] -= 1;
            out += QJacExpr::monomial(rest, c * Rational(ex)) * img[static_cast<size_t>(g)];
        }
    }
    return out;
}

const Table& table() {
    static Table t;
    static std::once_flag once;
    std::call_once(once, [] {
        const int q = 9;
        GenPowers gp(q);
        auto& dz = t.images[op_idx(Deriv::Dz)];
        auto& dtau = t.images[op_idx(Deriv::Dtau)];
        auto& da = t.images[op_idx(Deriv::dA)];
        auto& dg2 = t.images[op_idx(Deriv::dG2)];

        da[kA] = QJacExpr::constant(Rational(1));
        dg2[kG2] = QJacExpr::constant(Rational(1));

        dz[kTheta] = QJacExpr::gen(kA) * QJacExpr::gen(kTheta);
        dz[kWp] = QJacExpr::gen(kWpp);
        // D_z G2 = D_z G4 = 0; the two non-definitional images are solved.
        dz[kA] = recognize_with(gp, gp.base[kA].dz(), 2, 0, 5, "derivation table (Dz A)");
        dz[kWpp] = recognize_with(gp, gp.base[kWpp].dz(), 4, 0, 5, "derivation table (Dz wp')");

        dtau[kTheta] = recognize_with(gp, gp.base[kTheta].dtau(), 1, 1, 5, "derivation table (Dtau Theta)");
        dtau[kA] = recognize_with(gp, gp.base[kA].dtau(), 3, 0, 5, "derivation table (Dtau A)");
        dtau[kG2] = recognize_with(gp, gp.base[kG2].dtau(), 4, 0, 5, "derivation table (Dtau G2)");
        dtau[kWp] = recognize_with(gp, gp.base[kWp].dtau(), 4, 0, 5, "derivation table (Dtau wp)");
        dtau[kWpp] = recognize_with(gp, gp.base[kWpp].dtau(), 5, 0, 5, "derivation table (Dtau wp')");
        dtau[kG4] = recognize_with(gp, gp.base[kG4].dtau(), 6, 0, 5, "derivation table (Dtau G4)");

        // The commutation relations certify the solves on every generator:
        // [dG2, Dtau] = -2 wt, [dA, Dz] = 2 ind, [dG2, Dz] = -2 dA,
        // [dA, Dtau] = Dz.
        for (int g = 0; g < 6; ++g) {
            QJacExpr x = QJacExpr::gen(static_cast<Gen>(g));
            int wt = kGenWeight[static_cast<size_t>(g)];
            int ind2 = g == kTheta ? 1 : 0;
            auto D = [&](const QJacExpr& e, Deriv op) { return derive_with(t, e, op); };
            if (D(D(x, Deriv::Dtau), Deriv::dG2) - D(D(x, Deriv::dG2), Deriv::Dtau) != x.scalar_mul(Rational(-2 * wt)))
                throw ring_error_t("derivation table: [dG2, Dtau] failed");
            if (D(D(x, Deriv::Dz), Deriv::dA) - D(D(x, Deriv::dA), Deriv::Dz) != x.scalar_mul(Rational(ind2)))
                throw ring_error_t("derivation table: [dA, Dz] failed");
            if (D(D(x, Deriv::Dz), Deriv::dG2) - D(D(x, Deriv::dG2), Deriv::Dz) !=
                D(x, Deriv::dA).scalar_mul(Rational(-2)))
                throw ring_error_t("derivation table: [dG2, Dz] failed");
            if (D(D(x, Deriv::Dtau), Deriv::dA) - D(D(x, Deriv::dA), Deriv::Dtau) != D(x, Deriv::Dz))
                throw ring_error_t("derivation table: [dA, Dtau] failed");
        }
    });
    return t;
}

}  // namespace

const std::array<QJacExpr, 6>& derivation_images(Deriv op) { return table().images[op_idx(op)]; }

QJacExpr derive(const QJacExpr& e, Deriv op) { return derive_with(table(), e, op); }

const QJacExpr& g6_in_R() {
    static QJacExpr v;
    static std::once_flag once;
    std::call_once(once, [] {
        GenPowers gp(9);
        v = recognize_with(gp, JacobiFourier::from_qseries(modular::eisenstein_G(6, 9)), 6, 0, 5, "g6_in_R");
    });
    return v;
}

QJacExpr express_phi(int m) {
    if (m < 1) throw precondition_error("express_phi: m >= 1");
    // c_j = [x^j] exp(2m sum_{k >= 4 even} G_k x^k / k!) in Q[G4, G6].
    using MPoly = modular::QuasiModularPoly;
    using MSeries = TruncatedSeries<MPoly>;
    std::vector<MPoly> arg(static_cast<size_t>(std::max(0, m - 4)));
    for (int k = 4; k < m; k += 2) {
        MPoly gk = k == 4 ? MPoly::gen(1) : (k == 6 ? MPoly::gen(2) : modular::express_G_high(k));
        arg[static_cast<size_t>(k - 4)] =
            gk.scalar_mul(Rational(2 * m) / Rational::factorial(static_cast<unsigned long>(k)));
    }
    MSeries expo = arg.empty() ? MSeries::ring_one().truncate(m) : MSeries("x", 4, std::move(arg), m).exp_series();
    // Map Q[G4, G6] into R.
    auto to_ring = [&](const MPoly& p) {
        QJacExpr out;
        for (const auto& [k, c] : p.terms()) {
            if (k[0] != 0) throw ring_error_t("express_phi: unexpected G2");
            QJacExpr term = QJacExpr::constant(c);
            for (int i = 0; i < k[1]; ++i) term = term * QJacExpr::gen(kG4);
            for (int i = 0; i < k[2]; ++i) term = term * g6_in_R();
            out += term;
        }
        return out;
    };
    // D = D_z + 2 G2 d/dA; phi_m = sum_{j+l=m-1} c_j (1/l!) D^l(Theta^m).
    QJacExpr theta_m = QJacExpr::constant(Rational(1));
    for (int i = 0; i < m; ++i) theta_m = theta_m * QJacExpr::gen(kTheta);
    std::vector<QJacExpr> dpow(static_cast<size_t>(m));
    dpow[0] = theta_m;
    for (int l = 1; l < m; ++l)
        dpow[static_cast<size_t>(l)] =
            derive(dpow[static_cast<size_t>(l - 1)], Deriv::Dz) +
            QJacExpr::gen(kG2).scalar_mul(Rational(2)) * derive(dpow[static_cast<size_t>(l - 1)], Deriv::dA);
    QJacExpr out;
    for (int j = 0; j <= m - 1; ++j) {
        int l = m - 1 - j;
        MPoly cj = j < expo.truncation_order() ? expo.coeff(j) : MPoly();
        if (cj.is_zero()) continue;
        out += to_ring(cj) *
               dpow[static_cast<size_t>(l)].scalar_mul(Rational(1) / Rational::factorial(static_cast<unsigned long>(l)));
    }
    const int q_check = 6;
    if (eval_to_fourier(out, q_check) != phi::ode(m, q_check))
        throw ring_error_t("express_phi: evaluation mismatch at m = " + std::to_string(m));
    return out;
}

std::map<int, QJacExpr> elliptic_transform(const QJacExpr& e) {
    std::map<int, QJacExpr> out;
    QJacExpr cur = e;
    Rational fact(1);
    for (int k = 0; !cur.is_zero(); ++k) {
        if (k > 0) fact *= Rational(-1, k);
        out[k] = cur.scalar_mul(fact);
        cur = derive(cur, Deriv::dA);
    }
    if (out.empty()) out[0] = QJacExpr();
    return out;
}

std::map<std::pair<int, int>, QJacExpr> modular_transform(const QJacExpr& e) {
    std::map<std::pair<int, int>, QJacExpr> out;
    QJacExpr row = e;
    for (int a = 0; !row.is_zero(); ++a) {
        if (a > 0) {
            row = derive(row, Deriv::dG2).scalar_mul(Rational(1, a));
            if (row.is_zero()) break;
        }
        QJacExpr cur = row;
        for (int b = 0; !cur.is_zero(); ++b) {
            if (b > 0) {
                cur = derive(cur, Deriv::dA).scalar_mul(Rational(1, b));
                if (cur.is_zero()) break;
            }
            out[{a, b}] = cur;
        }
    }
    if (out.empty()) out[{0, 0}] = QJacExpr();
    return out;
}

}  // namespace qkz::ring
