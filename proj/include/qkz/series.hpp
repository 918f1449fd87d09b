#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qkz/laurent.hpp"
#include "qkz/rational.hpp"

namespace qkz {

struct window_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sentinel truncation order for exact (polynomial) series: all coefficients
// beyond the stored range are known to be zero.
inline constexpr int kInfOrder = std::numeric_limits<int>::max() / 4;

inline int order_add(int a, int b) {
    if (a >= kInfOrder || b >= kInfOrder) return kInfOrder;
    return a + b;
}

// Truncated (Laurent-capable) power series over a coefficient ring C.
// Coefficients are stored densely from the valuation upward. Exponents in
// [valuation, truncation_order) are known; below the valuation they are
// known to be zero; at or above truncation_order they are unknown unless
// truncation_order == kInfOrder (exact polynomial).
//
// Binary operations take the minimum of the operands' effective windows;
// there is no path that silently inflates precision. A zero-within-window
// coefficient counts as zero for valuation purposes, which is sound as
// long as nested coefficient windows are kept uniform across the stored
// range (all constructors in this project do).
template <class C>
class TruncatedSeries {
  public:
    TruncatedSeries() = default;  // exact zero, wildcard tag

    TruncatedSeries(std::string var, int valuation, std::vector<C> coeffs, int trunc = kInfOrder)
        : var_(std::move(var)), val_(valuation), trunc_(trunc), coeffs_(std::move(coeffs)) {
        if (trunc_ < kInfOrder && val_ + static_cast<int>(coeffs_.size()) > trunc_)
            throw window_error("TruncatedSeries: coefficients exceed the window");
        normalize();
    }

    static TruncatedSeries monomial(std::string var, int exp, C coeff, int trunc = kInfOrder) {
        std::vector<C> cs;
        cs.push_back(std::move(coeff));
        return TruncatedSeries(std::move(var), exp, std::move(cs), trunc);
    }
    static TruncatedSeries constant(C c) { return monomial("", 0, std::move(c)); }
    static TruncatedSeries ring_one() { return constant(C::ring_one()); }
    // The identity series x (exact).
    static TruncatedSeries identity(std::string var) { return monomial(std::move(var), 1, C::ring_one()); }
    static TruncatedSeries zero_to_order(std::string var, int trunc) {
        return TruncatedSeries(std::move(var), trunc, {}, trunc);
    }

    const std::string& var() const { return var_; }
    int valuation() const { return val_; }
    int truncation_order() const { return trunc_; }
    bool exact() const { return trunc_ >= kInfOrder; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<C>& coeffs() const { return coeffs_; }

    // Coefficient at exponent e; throws if e is outside the known window.
    C coeff(int e) const {
        if (e >= trunc_) throw window_error("coefficient beyond truncation window");
        if (e < val_ || e >= val_ + static_cast<int>(coeffs_.size())) return C{};
        return coeffs_[e - val_];
    }

    // Valuation for window bookkeeping: +inf-ish for a series with no
    // nonzero stored coefficient.
    int window_valuation() const {
        if (!coeffs_.empty()) return val_;
        return exact() ? kInfOrder : trunc_;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r = *this;
        for (C& c : r.coeffs_) c = -c;
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::string var = merge_var(a.var_, b.var_);
        int trunc = std::min(a.trunc_, b.trunc_);
        int lo = std::min(a.low_(trunc), b.low_(trunc));
        int hi = std::min(trunc, std::max(a.high_(), b.high_()));
        if (lo >= hi) return zero_like_(var, trunc);
        std::vector<C> cs(hi - lo);
        for (int e = lo; e < hi; ++e) {
            C v = a.at_(e);
            v += b.at_(e);
            cs[e - lo] = std::move(v);
        }
        return TruncatedSeries(std::move(var), lo, std::move(cs), trunc);
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }
    TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
    TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this = *this - o; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::string var = merge_var(a.var_, b.var_);
        int trunc = std::min(order_add(a.trunc_, b.window_valuation()),
                             order_add(b.trunc_, a.window_valuation()));
        if (a.coeffs_.empty() || b.coeffs_.empty()) return zero_like_(var, trunc);
        int lo = a.val_ + b.val_;
        int hi = std::min(trunc, a.high_() + b.high_() - 1);
        if (lo >= hi) return zero_like_(var, trunc);
        std::vector<C> cs(hi - lo);
        for (size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (size_t j = 0; j < b.coeffs_.size(); ++j) {
                int e = a.val_ + static_cast<int>(i) + b.val_ + static_cast<int>(j);
                if (e >= hi) break;
                if (b.coeffs_[j].is_zero()) continue;
                cs[e - lo] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return TruncatedSeries(std::move(var), lo, std::move(cs), trunc);
    }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    // Equality within the common window.
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return (a - b).is_zero(); }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

    TruncatedSeries scalar_mul(const Rational& c) const {
        if (c.is_zero()) return zero_like_(var_, trunc_);
        TruncatedSeries r = *this;
        for (C& v : r.coeffs_) v = v.scalar_mul(c);
        r.normalize();
        return r;
    }

    // Multiplication by x^k.
    TruncatedSeries shift(int k) const {
        TruncatedSeries r = *this;
        r.val_ += k;
        r.trunc_ = order_add(r.trunc_, k);
        if (r.coeffs_.empty() && !r.exact()) r.val_ = r.trunc_;
        return r;
    }

    // Restricts the window to new_trunc (never widens).
    TruncatedSeries truncate(int new_trunc) const {
        if (new_trunc >= trunc_) return *this;
        TruncatedSeries r = *this;
        r.trunc_ = new_trunc;
        if (r.val_ >= new_trunc) {
            r.val_ = new_trunc;
            r.coeffs_.clear();
            return r;
        }
        if (r.val_ + static_cast<int>(r.coeffs_.size()) > new_trunc) r.coeffs_.resize(new_trunc - r.val_);
        r.normalize();
        return r;
    }

    TruncatedSeries map_coeffs(const std::function<C(int, const C&)>& fn) const {
        TruncatedSeries r = *this;
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = fn(val_ + static_cast<int>(i), r.coeffs_[i]);
        r.normalize();
        return r;
    }

    // Multiplies the coefficient at exponent n by weight_fn(n).
    TruncatedSeries euler_derive(const std::function<Rational(int)>& weight_fn) const {
        return map_coeffs([&](int e, const C& c) { return c.scalar_mul(weight_fn(e)); });
    }

    // Formal derivative d/dx. Knowledge of exponent e requires e+1 < trunc.
    TruncatedSeries derivative() const {
        TruncatedSeries r(var_);
        r.trunc_ = exact() ? kInfOrder : trunc_ - 1;
        r.val_ = val_ - 1;
        r.coeffs_.reserve(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i)
            r.coeffs_.push_back(coeffs_[i].scalar_mul(Rational(val_ + static_cast<int>(i))));
        if (!r.exact() && r.val_ + static_cast<int>(r.coeffs_.size()) > r.trunc_) r.coeffs_.resize(r.trunc_ - r.val_);
        r.normalize();
        return r;
    }

    // Multiplicative inverse within the window. The leading coefficient must
    // be a unit. Exact inputs must either be monomials or get truncated first.
    TruncatedSeries invert() const {
        if (coeffs_.empty()) throw precondition_error("invert: zero series");
        auto lead = coeffs_.front().try_invert();
        if (!lead) throw precondition_error("invert: leading coefficient is not a unit");
        if (exact()) {
            if (coeffs_.size() == 1) return monomial(var_, -val_, std::move(*lead));
            throw precondition_error("invert: exact non-monomial input; truncate first");
        }
        // b = x^{-val} * u^{-1} with u the unit part; length of the unit
        // window is preserved.
        int len = trunc_ - val_;
        std::vector<C> b(len);
        b[0] = *lead;
        for (int n = 1; n < len; ++n) {
            C acc{};
            for (int k = 1; k <= n; ++k) {
                if (static_cast<size_t>(k) >= coeffs_.size()) break;
                if (coeffs_[k].is_zero() || b[n - k].is_zero()) continue;
                acc += coeffs_[k] * b[n - k];
            }
            b[n] = -(*lead * acc);
        }
        return TruncatedSeries(var_, -val_, std::move(b), -val_ + len);
    }
    std::optional<TruncatedSeries> try_invert() const {
        if (coeffs_.empty()) return std::nullopt;
        if (exact() && coeffs_.size() != 1) return std::nullopt;
        if (!coeffs_.front().try_invert()) return std::nullopt;
        return invert();
    }

    // exp of a series with zero constant term and no Laurent part, by the
    // ODE recursion b' = a' b.
    TruncatedSeries exp_series() const {
        if (window_valuation() < 1) throw precondition_error("exp: nonzero constant or Laurent part");
        if (exact()) throw precondition_error("exp: exact input; truncate first");
        int len = trunc_;
        if (len <= 0) throw window_error("exp: empty window");
        std::vector<C> b(len);
        b[0] = C::ring_one();
        for (int n = 1; n < len; ++n) {
            C acc{};
            for (int k = 1; k <= n; ++k) {
                C ak = at_(k), bnk = b[n - k];
                if (ak.is_zero() || bnk.is_zero()) continue;
                acc += ak.scalar_mul(Rational(k)) * bnk;
            }
            b[n] = acc.scalar_mul(Rational(1, n));
        }
        return TruncatedSeries(var_, 0, std::move(b), len);
    }

    // log of a series with constant term 1.
    TruncatedSeries log_series() const {
        if (exact()) throw precondition_error("log: exact input; truncate first");
        if (val_ != 0 || coeffs_.empty() || !(coeffs_.front() - C::ring_one()).is_zero())
            throw precondition_error("log: constant term must be 1");
        int len = trunc_;
        std::vector<C> l(len);
        for (int n = 1; n < len; ++n) {
            C acc{};
            for (int k = 1; k < n; ++k) {
                C ank = at_(n - k);
                if (l[k].is_zero() || ank.is_zero()) continue;
                acc += l[k].scalar_mul(Rational(k)) * ank;
            }
            l[n] = at_(n) - acc.scalar_mul(Rational(1, n));
        }
        return TruncatedSeries(var_, 0, std::move(l), len);
    }

    std::string to_string() const {
        std::ostringstream os;
        const std::string v = var_.empty() ? "x" : var_;
        bool first = true;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << coeffs_[i].to_string() << ")*" << v << "^" << (val_ + static_cast<int>(i));
        }
        if (first) os << "0";
        if (!exact()) os << " + O(" << v << "^" << trunc_ << ")";
        return os.str();
    }

  private:
    static TruncatedSeries zero_like_(const std::string& var, int trunc) {
        TruncatedSeries r(var.empty() ? std::string() : var);
        r.trunc_ = trunc;
        r.val_ = trunc >= kInfOrder ? 0 : trunc;
        return r;
    }
    explicit TruncatedSeries(std::string var) : var_(std::move(var)) {}

    int high_() const { return val_ + static_cast<int>(coeffs_.size()); }
    int low_(int cap) const { return coeffs_.empty() ? cap : val_; }
    C at_(int e) const {
        if (e < val_ || e >= high_()) return C{};
        return coeffs_[e - val_];
    }

    void normalize() {
        size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
            val_ += static_cast<int>(lead);
        }
        if (exact()) {
            while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
            if (coeffs_.empty()) val_ = 0;
        } else if (coeffs_.empty()) {
            val_ = trunc_;
        }
    }

    std::string var_;
    int val_ = 0;
    int trunc_ = kInfOrder;
    std::vector<C> coeffs_;
};

// ---------------------------------------------------------------------------
// Composition and inversion
// ---------------------------------------------------------------------------

template <class C>
TruncatedSeries<C> pow_series(const TruncatedSeries<C>& a, long e) {
    if (e < 0) return pow_series(a.invert(), -e);
    TruncatedSeries<C> r = TruncatedSeries<C>::ring_one();
    TruncatedSeries<C> b = a;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) r = r * b;
        if (k > 1) b = b * b;
    }
    return r;
}

// Formal substitution outer(inner). Requires inner valuation >= 1; negative
// outer exponents are handled through inversion of inner (unit leading
// coefficient required in that case).
template <class C>
TruncatedSeries<C> compose(const TruncatedSeries<C>& outer, const TruncatedSeries<C>& inner) {
    if (inner.is_zero() && inner.exact()) {
        if (outer.valuation() < 0 && !outer.is_zero())
            throw precondition_error("compose: Laurent outer at zero inner");
        if (outer.valuation() > 0 || outer.is_zero()) return TruncatedSeries<C>(inner.var(), 0, {}, kInfOrder);
        return TruncatedSeries<C>::monomial(inner.var(), 0, outer.coeff(0));
    }
    int p = inner.window_valuation();
    if (p < 1) throw precondition_error("compose: inner valuation must be >= 1");
    int vo = outer.valuation();
    // An inner error at order T_i enters through outer'(inner), whose
    // valuation is at least max(vo-1, 0)*p (the constant term drops out).
    int dval = vo < 0 ? vo - 1 : std::max(vo - 1, 0);
    int trunc;
    if (outer.exact())
        trunc = inner.exact() ? kInfOrder : order_add(inner.truncation_order(), dval * p);
    else if (inner.exact())
        trunc = p >= kInfOrder ? kInfOrder : outer.truncation_order() * p;
    else
        trunc = std::min(order_add(inner.truncation_order(), dval * p), outer.truncation_order() * p);

    TruncatedSeries<C> result(inner.var(), trunc >= kInfOrder ? 0 : trunc, {}, trunc);
    if (outer.is_zero()) return result;

    TruncatedSeries<C> inner_t = trunc < kInfOrder ? inner.truncate(trunc) : inner;
    // Horner over nonnegative exponents; explicit inverse powers for negatives.
    int hi = outer.exact() ? outer.valuation() + static_cast<int>(outer.coeffs().size()) : outer.truncation_order();
    TruncatedSeries<C> pos;  // exact zero
    for (int e = hi - 1; e >= 0; --e) {
        pos = pos * inner_t;
        C c = outer.coeff(e);
        if (!c.is_zero()) pos = pos + TruncatedSeries<C>::constant(std::move(c));
    }
    result = result + pos;
    if (vo < 0) {
        auto inv = inner_t.try_invert();
        if (!inv) throw precondition_error("compose: Laurent outer needs invertible inner");
        TruncatedSeries<C> ipow = *inv;
        for (int e = -1; e >= vo; --e) {
            C c = outer.coeff(e);
            if (!c.is_zero()) result = result + ipow * TruncatedSeries<C>::constant(std::move(c));
            if (e > vo) ipow = ipow * *inv;
        }
    }
    return result.truncate(trunc);
}

// Compositional inverse of a series with valuation 1 and unit leading
// coefficient, via the Lagrange inversion formula
//   [y^m] b = (1/m) [x^{m-1}] (x/a(x))^m.
template <class C>
TruncatedSeries<C> lagrange_invert(const TruncatedSeries<C>& a) {
    if (a.window_valuation() != 1) throw precondition_error("lagrange_invert: valuation must be 1");
    if (a.exact()) throw precondition_error("lagrange_invert: exact input; truncate first");
    auto u = a.shift(-1);  // unit part
    auto w = u.invert();   // (x/a)^1
    int n = a.truncation_order();
    std::vector<C> b(n);
    TruncatedSeries<C> wm = w;
    for (int m = 1; m < n; ++m) {
        b[m] = wm.coeff(m - 1).scalar_mul(Rational(1, m));
        if (m + 1 < n) wm = wm * w;
    }
    return TruncatedSeries<C>(a.var(), 0, std::move(b), n);
}

// Checks one instance of the coefficient identity
//   (1/m)[f^m]_{x^{m-k}} = (1/k) sum_{n_1+..+n_k=m} prod (1/n_i)[f^{n_i}]_{x^{n_i-1}}
// for positive integers m, k.
template <class C>
bool coefficient_identity_check(const TruncatedSeries<C>& f, int k, int m) {
    if (m < 1 || k < 1) throw precondition_error("coefficient_identity_check: m, k >= 1");
    std::vector<TruncatedSeries<C>> powers(m + 1);
    powers[1] = f.truncate(std::min(f.truncation_order(), m + 1));
    for (int i = 2; i <= m; ++i) powers[i] = powers[i - 1] * powers[1];
    C lhs = powers[m].coeff(m - k).scalar_mul(Rational(1, m));
    // Enumerate compositions of m into k positive parts.
    C rhs{};
    std::vector<int> parts(k, 1);
    std::function<void(int, int, C)> rec = [&](int idx, int rem, C acc) {
        if (idx == k - 1) {
            rhs += acc * powers[rem].coeff(rem - 1).scalar_mul(Rational(1, rem));
            return;
        }
        for (int n = 1; rem - n >= k - 1 - idx; ++n)
            rec(idx + 1, rem - n, acc * powers[n].coeff(n - 1).scalar_mul(Rational(1, n)));
    };
    rec(0, m, C::ring_one());
    return (lhs - rhs.scalar_mul(Rational(1, k))).is_zero();
}

// ---------------------------------------------------------------------------
// Common concrete instantiations
// ---------------------------------------------------------------------------

using QSeries = TruncatedSeries<Rational>;      // q-expansions (also t, s, ...)
using SPoly = LaurentPoly<Rational>;            // Laurent polynomials in s
using QSPoly = TruncatedSeries<SPoly>;          // q-series with s-poly coefficients
using ZQSeries = TruncatedSeries<QSeries>;      // z-Taylor with q-series coefficients

inline const char* kQVar = "q";
inline const char* kSVar = "s";
inline const char* kZVar = "z";

}  // namespace qkz
