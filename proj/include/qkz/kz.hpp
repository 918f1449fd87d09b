#pragma once

#include <variant>

#include "qkz/fracq.hpp"
#include "qkz/jacobi.hpp"

namespace qkz::kz {

// A Kaneko-Zagier system built from a weight -1 seed g: E = D_tau g / g,
// H = D_tau^2 g / g, alpha the leading q-exponent of g. E and H are always
// computed from g, never supplied.
template <class C>
struct KZSystem {
    FracSeries<C> g, E, H;
    Rational alpha;
};

// Resonance at the critical exponent kappa* = -2 m alpha with nonvanishing
// right-hand side. A value, not an error: the obstruction pattern is the
// interesting output.
struct Obstruction {
    Rational kappa;
    std::string residual;
};

template <class C>
struct KZSolution {
    int m = 0;
    FracSeries<C> gm;  // leading coefficient 1, valuation m * alpha
    int weight() const { return m - 1; }
};

template <class C>
KZSystem<C> make_kz(const FracSeries<C>& g) {
    KZSystem<C> sys;
    sys.g = g;
    FracSeries<C> ginv(g.denom, g.body.invert());
    sys.E = FracSeries<C>(g.denom, g.dtau().body * ginv.body);
    sys.H = FracSeries<C>(g.denom, g.dtau().dtau().body * ginv.body);
    sys.alpha = g.q_valuation();
    return sys;
}

// Solves D_tau^2 g_m = m^2 H g_m with leading coefficient 1 at q^{m alpha},
// to `t_order` lattice steps beyond the valuation. At the critical exponent
// the free coefficient is gauged to zero when the system is solvable.
template <class C>
std::variant<KZSolution<C>, Obstruction> kz_solve(const KZSystem<C>& sys, int m, int t_order) {
    if (m < 1) throw precondition_error("kz_solve: m >= 1");
    const int c = sys.H.denom;
    const auto& H = sys.H.body;
    t_order = std::min(t_order, H.truncation_order());
    Rational malpha = sys.alpha.scalar_mul(Rational(m));
    std::vector<C> coeffs(static_cast<size_t>(t_order));
    coeffs[0] = C::ring_one();
    Rational m2(static_cast<long>(m) * m);
    for (int i = 1; i < t_order; ++i) {
        C rhs{};
        for (int j = 1; j <= i; ++j) {
            C hj = H.coeff(j);
            if (hj.is_zero() || coeffs[static_cast<size_t>(i - j)].is_zero()) continue;
            rhs += hj * coeffs[static_cast<size_t>(i - j)];
        }
        rhs = rhs.scalar_mul(m2);
        Rational kappa(i, c);
        Rational lhs_factor = kappa * (kappa + malpha * Rational(2));
        if (lhs_factor.is_zero()) {
            if (!rhs.is_zero()) return Obstruction{kappa, rhs.to_string()};
            coeffs[static_cast<size_t>(i)] = C{};  // canonical gauge
        } else {
            coeffs[static_cast<size_t>(i)] = rhs.scalar_mul(lhs_factor.inverse());
        }
    }
    KZSolution<C> sol;
    sol.m = m;
    int val = (malpha * Rational(c)).num_long();
    sol.gm = FracSeries<C>(c, TruncatedSeries<C>("t", val, std::move(coeffs), val + t_order));
    return sol;
}

// Modified Serre derivative theta_g = D_tau + E wt on weight-k input.
template <class C>
FracSeries<C> theta_g(const KZSystem<C>& sys, const FracSeries<C>& f, int k) {
    return f.dtau() + (sys.E * f).scalar_mul(Rational(k));
}

// First Rankin-Cohen bracket of f (weight k) and h (weight l):
//   [f, h] = k f D_tau(h) - l D_tau(f) h = k f theta_g(h) - l theta_g(f) h.
template <class C>
FracSeries<C> bracket(const FracSeries<C>& f, int k, const FracSeries<C>& h, int l) {
    return (f * h.dtau()).scalar_mul(Rational(k)) - (f.dtau() * h).scalar_mul(Rational(l));
}

// theta_g^2 f = H wt(wt+2) f, the quotient form of the system.
template <class C>
bool satisfies_kz2(const KZSystem<C>& sys, const FracSeries<C>& f, int k) {
    FracSeries<C> lhs = theta_g(sys, theta_g(sys, f, k), k + 2);
    FracSeries<C> rhs = (sys.H * f).scalar_mul(Rational(k * (k + 2)));
    return lhs == rhs;
}

// From solutions f_k, f_l of the quotient equation with [f_l, H] = 0,
// produces the weight k-l-2 and k+l+2 solutions
//   [f_k, f_l] g^{2l+4}   and   [f_k g^{2k+2}, f_l] g^{-2k-2}.
template <class C>
std::pair<FracSeries<C>, FracSeries<C>> ladder_step(const KZSystem<C>& sys, const FracSeries<C>& fk, int k,
                                                    const FracSeries<C>& fl, int l) {
    if (!(bracket(fl, l, sys.H, 4).is_zero()))
        throw precondition_error("ladder_step: [f_l, H] != 0");
    FracSeries<C> down = bracket(fk, k, fl, l) * sys.g.pow(2 * l + 4);
    FracSeries<C> up = bracket(fk * sys.g.pow(2 * k + 2), -k - 2, fl, l) * sys.g.pow(-2 * k - 2);
    return {down, up};
}

// The closing identity of the ladder remark:
// 16(l+2) D2/g = 4 D4/D2 + 12 D2/g + (l-4)(D3/D2)^2
//   + 2(3l+4)(D3/D2)(D1/g) + 3(3l+4)(D1/g)^2, with Di = D_tau^i g.
template <class C>
bool obstruction_identity_check(const KZSystem<C>& sys, int l) {
    FracSeries<C> d1 = sys.g.dtau();
    FracSeries<C> d2 = d1.dtau();
    FracSeries<C> d3 = d2.dtau();
    FracSeries<C> d4 = d3.dtau();
    FracSeries<C> h = d2 / sys.g;
    FracSeries<C> r32 = d3 / d2;
    FracSeries<C> e = d1 / sys.g;
    FracSeries<C> lhs = h.scalar_mul(Rational(16 * (l + 2)));
    FracSeries<C> rhs = (d4 / d2).scalar_mul(Rational(4)) + h.scalar_mul(Rational(12)) +
                        (r32 * r32).scalar_mul(Rational(l - 4)) + (r32 * e).scalar_mul(Rational(2 * (3 * l + 4))) +
                        (e * e).scalar_mul(Rational(3 * (3 * l + 4)));
    return lhs == rhs;
}

// [f_l, H] at weights (l, 4); the ladder hypothesis is that this vanishes.
template <class C>
FracSeries<C> bracket_with_H(const KZSystem<C>& sys, const FracSeries<C>& fl, int l) {
    return bracket(fl, l, sys.H, 4);
}

// ---------------------------------------------------------------------------
// Presets and torsion-point specialization
// ---------------------------------------------------------------------------

// g = 1/eta^2 (the classical Kaneko-Zagier seed).
FracQSeries preset_eta2(int q_order);
// g = 1/(eta(tau) eta(2tau)) (the level-2 seed).
FracQSeries preset_eta1eta2(int q_order);

// The theta seed in the formal Laurent coefficient ring Q((s)) truncated at
// s_window: coefficients are upward-truncated s-series.
using SSeries = TruncatedSeries<Rational>;
FracSeries<SSeries> preset_theta(int q_order, int s_window);

// s-expansion of an exact Fourier coefficient as an element of Q((s)).
SSeries sseries_from_spoly(const SPoly& c, int s_window);

// Specialization of an exact Fourier object at z/(2 pi i) = a tau + b with
// b in {0, 1/2}. The result is i^{phase_quarter} times the returned real
// series; phase_quarter is 0 for even index parity and 1 for odd.
struct TorsionSpecialization {
    FracQSeries series;
    int phase_quarter = 0;
};
TorsionSpecialization specialize_torsion_point(const jac::JacobiFourier& f, const Rational& a, bool b_half);

}  // namespace qkz::kz
