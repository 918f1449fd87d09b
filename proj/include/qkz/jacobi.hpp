#pragma once

#include <optional>

#include "qkz/series.hpp"

namespace qkz::jac {

// weight / index bigrading; index is half-integral, stored doubled.
struct BiGrade {
    int weight = 0;
    int index2 = 0;
    friend bool operator==(const BiGrade&, const BiGrade&) = default;
};

// Fourier-side quasi-Jacobi object: a q-series whose coefficients are
// Laurent polynomials in s = e^{z/2}. Objects built from A or wp carry a
// finite reliability bound on the s-exponents (their q^0 coefficients are
// infinite geometric tails in the |q| < |p| < 1 region); everything in the
// phi family is exact. Lower s-tails are always exact, so products track
// the reliable upper bound through min(ua + min_s(b), ub + min_s(a)).
class JacobiFourier {
  public:
    JacobiFourier() = default;
    explicit JacobiFourier(QSPoly body, int s_upper = kInfOrder, std::optional<BiGrade> grade = std::nullopt)
        : body_(std::move(body)), s_upper_(s_upper), grade_(grade) {
        clip_();
    }
    static JacobiFourier from_qseries(const QSeries& f, std::optional<BiGrade> grade = std::nullopt);

    const QSPoly& body() const { return body_; }
    int s_upper() const { return s_upper_; }
    bool exact() const { return s_upper_ >= kInfOrder; }
    const std::optional<BiGrade>& grade() const { return grade_; }
    JacobiFourier with_grade(BiGrade g) const { return JacobiFourier(body_, s_upper_, g); }
    int q_order() const { return body_.truncation_order(); }
    bool is_zero() const { return body_.is_zero(); }

    // q^n coefficient (within the window).
    SPoly c(int n) const { return body_.coeff(n); }

    // Minimal stored s-exponent across all q-coefficients (0 when empty).
    int s_min_support() const;

    JacobiFourier operator-() const { return JacobiFourier(-body_, s_upper_, grade_); }
    friend JacobiFourier operator+(const JacobiFourier& a, const JacobiFourier& b);
    friend JacobiFourier operator-(const JacobiFourier& a, const JacobiFourier& b) { return a + (-b); }
    friend JacobiFourier operator*(const JacobiFourier& a, const JacobiFourier& b);
    JacobiFourier& operator+=(const JacobiFourier& o) { return *this = *this + o; }
    JacobiFourier& operator-=(const JacobiFourier& o) { return *this = *this - o; }
    JacobiFourier& operator*=(const JacobiFourier& o) { return *this = *this * o; }
    JacobiFourier scalar_mul(const Rational& c) const { return JacobiFourier(body_.scalar_mul(c), s_upper_, grade_); }

    // Equality of all coefficients within the common (q, s) window.
    friend bool operator==(const JacobiFourier& a, const JacobiFourier& b) { return (a - b).is_zero(); }
    friend bool operator!=(const JacobiFourier& a, const JacobiFourier& b) { return !(a == b); }

    JacobiFourier dz() const;    // D_z = d/dz: s^j coefficient scaled by j/2
    JacobiFourier dtau() const;  // D_tau = q d/dq
    JacobiFourier truncate_q(int order) const { return JacobiFourier(body_.truncate(order), s_upper_, grade_); }

    // Parity under s -> s^{-1} within the window: sign = -1 odd, +1 even.
    // Checks q-exponents >= q_from; the q^0 coefficients of region
    // expansions (A, wp) are one-sided tails and are excluded by passing 1.
    bool has_parity(int sign, int q_from = -kInfOrder) const;
    // s -> s^{-1}; exact objects only.
    JacobiFourier flip_s() const;

    std::string to_string() const { return body_.to_string(); }

  private:
    void clip_();
    QSPoly body_;
    int s_upper_ = kInfOrder;
    std::optional<BiGrade> grade_;
};

// x-Laurent series with Fourier coefficients (all exact objects).
using XSeries = TruncatedSeries<QSPoly>;
// x- or y-series with z-Taylor coefficients.
using YSeries = TruncatedSeries<ZQSeries>;

// Theta kernel by the product formula; exact, weight -1, index 1/2.
JacobiFourier theta_fourier(int q_order);

// z-Taylor expansion z * exp(-2 sum_{k>=2 even} G_k z^k / k!); the window is
// [1, z_order).
ZQSeries theta_taylor(int z_order, int q_order, const std::string& var = kZVar);

// F = D_tau^2 Theta / Theta by the displayed divisor sum (exact).
JacobiFourier F_series(int q_order);
// F by division in the z-Taylor ring (the independent route).
ZQSeries F_series_taylor_route(int q_order, int z_order);

// A = D_z Theta / Theta, wp, wp' with s-exponents reliable up to s_window.
JacobiFourier A_fourier(int q_order, int s_window);
JacobiFourier wp_fourier(int q_order, int s_window);
JacobiFourier wp_prime_fourier(int q_order, int s_window);

// (Theta(x+z)/Theta(x))^m as an x-Laurent series of valuation -m.
// Requires x_order >= m + 1.
XSeries theta_ratio_power(int m, int x_order, int q_order);
// The same ratio (first power) with z-Taylor coefficients, for the
// inversion machinery. x-window [-1, x_order), z-window z_order.
YSeries theta_ratio_z(int x_order, int z_order, int q_order);

// x^{-1} coefficient.
JacobiFourier residue(const XSeries& a);

// Substitutes s^j -> exp(jz/2) truncated at z_order; exact objects only.
ZQSeries fourier_to_taylor(const JacobiFourier& a, int z_order);

// Lift a q-series into the z-Taylor world (z^0 coefficient).
ZQSeries zq_constant(const QSeries& f);

}  // namespace qkz::jac
