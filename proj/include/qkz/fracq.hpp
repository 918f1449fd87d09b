#pragma once

#include <numeric>
#include <string>

#include "qkz/series.hpp"

namespace qkz {

// q-expansion with exponents in (1/denom) * Z: the body lives in the formal
// variable t with t^denom = q. Supports the eta-quotient seeds of the
// Kaneko-Zagier construction and torsion-point specializations.
template <class C>
struct FracSeries {
    int denom = 1;
    TruncatedSeries<C> body;  // var "t"

    FracSeries() = default;
    FracSeries(int d, TruncatedSeries<C> b) : denom(d), body(std::move(b)) {
        if (d < 1) throw precondition_error("FracSeries: denominator must be positive");
    }

    static FracSeries from_integral(const TruncatedSeries<C>& q_series) {
        return FracSeries(1, TruncatedSeries<C>("t", q_series.valuation(), q_series.coeffs(),
                                                q_series.truncation_order()));
    }

    bool is_zero() const { return body.is_zero(); }
    Rational q_valuation() const { return Rational(body.valuation(), denom); }
    Rational q_truncation() const { return Rational(body.truncation_order(), denom); }

    // Refines the lattice by a factor k (value unchanged).
    FracSeries refine(int k) const {
        if (k == 1) return *this;
        std::vector<C> cs;
        if (!body.is_zero()) {
            cs.resize((body.coeffs().size() - 1) * k + 1);
            for (size_t i = 0; i < body.coeffs().size(); ++i) cs[i * k] = body.coeffs()[i];
        }
        int trunc = body.exact() ? kInfOrder : (body.truncation_order() - 1) * k + 1;
        return FracSeries(denom * k, TruncatedSeries<C>("t", body.valuation() * k, std::move(cs), trunc));
    }

    // Reduces the lattice denominator by the gcd of the support.
    FracSeries normalize() const {
        if (!body.exact() && body.truncation_order() < 0) return *this;
        int g = denom;
        const auto& cs = body.coeffs();
        for (size_t i = 0; i < cs.size() && g > 1; ++i)
            if (!cs[i].is_zero()) g = std::gcd(g, std::abs(body.valuation() + static_cast<int>(i)));
        if (g <= 1) return *this;
        int new_trunc = body.exact() ? kInfOrder : (body.truncation_order() + g - 1) / g;
        std::vector<C> out;
        if (!cs.empty()) {
            out.resize((cs.size() - 1) / g + 1);
            for (size_t i = 0; i < cs.size(); ++i)
                if (!cs[i].is_zero()) out[i / g] = cs[i];
        }
        int new_val = cs.empty() ? (body.exact() ? 0 : new_trunc) : body.valuation() / g;
        return FracSeries(denom / g, TruncatedSeries<C>("t", new_val, std::move(out), new_trunc));
    }

    // Substitution q -> q^M.
    FracSeries rescale_q(int M) const {
        FracSeries r = refine(M);
        r.denom = denom;
        return r.normalize();
    }

    static void align(FracSeries& a, FracSeries& b) {
        int l = std::lcm(a.denom, b.denom);
        a = a.refine(l / a.denom);
        b = b.refine(l / b.denom);
    }

    friend FracSeries operator+(FracSeries a, FracSeries b) {
        align(a, b);
        return FracSeries(a.denom, a.body + b.body);
    }
    friend FracSeries operator-(FracSeries a, FracSeries b) {
        align(a, b);
        return FracSeries(a.denom, a.body - b.body);
    }
    friend FracSeries operator*(FracSeries a, FracSeries b) {
        align(a, b);
        return FracSeries(a.denom, a.body * b.body);
    }
    friend FracSeries operator/(FracSeries a, FracSeries b) {
        align(a, b);
        return FracSeries(a.denom, a.body * b.body.invert());
    }
    FracSeries operator-() const { return FracSeries(denom, -body); }
    friend bool operator==(const FracSeries& a, const FracSeries& b) { return (a - b).is_zero(); }
    friend bool operator!=(const FracSeries& a, const FracSeries& b) { return !(a == b); }

    FracSeries scalar_mul(const Rational& c) const { return FracSeries(denom, body.scalar_mul(c)); }

    FracSeries pow(long e) const { return FracSeries(denom, pow_series(body, e)); }

    // D_tau = q d/dq multiplies the t^j coefficient by j/denom.
    FracSeries dtau() const {
        int d = denom;
        return FracSeries(d, body.euler_derive([d](int j) { return Rational(j, d); }));
    }

    std::string to_string() const {
        return body.to_string() + (denom == 1 ? std::string() : " [t^" + std::to_string(denom) + "=q]");
    }
};

using FracQSeries = FracSeries<Rational>;

}  // namespace qkz
