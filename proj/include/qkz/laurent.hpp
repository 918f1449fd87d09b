#pragma once

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "qkz/rational.hpp"

namespace qkz {

struct ring_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Merges the symbol tags of two operands. An empty tag is a wildcard
// (constants); distinct non-empty tags are an error.
inline const std::string& merge_var(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty() || a == b) return a;
    throw ring_error("variable mismatch: '" + a + "' vs '" + b + "'");
}

// Sparse Laurent polynomial: finite map exponent -> coefficient, exponents
// may be negative, no stored zeros. The coefficient ring C may itself be a
// series type (nesting).
template <class C>
class LaurentPoly {
  public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::string var) : var_(std::move(var)) {}

    static LaurentPoly monomial(std::string var, int exp, C coeff) {
        LaurentPoly p(std::move(var));
        if (!coeff.is_zero()) p.terms_.emplace(exp, std::move(coeff));
        return p;
    }
    static LaurentPoly constant(C c) { return monomial("", 0, std::move(c)); }
    static LaurentPoly ring_one() { return constant(C::ring_one()); }

    const std::string& var() const { return var_; }
    const std::map<int, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    C coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C{} : it->second;
    }
    int min_exp() const {
        if (terms_.empty()) throw ring_error("LaurentPoly: min_exp of zero");
        return terms_.begin()->first;
    }
    int max_exp() const {
        if (terms_.empty()) throw ring_error("LaurentPoly: max_exp of zero");
        return terms_.rbegin()->first;
    }

    void add_term(int e, const C& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        var_ = merge_var(var_, o.var_);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }
    LaurentPoly operator-() const {
        LaurentPoly r(var_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r(merge_var(a.var_, b.var_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    LaurentPoly scalar_mul(const Rational& c) const {
        LaurentPoly r(var_);
        if (c.is_zero()) return r;
        for (const auto& [e, v] : terms_) r.add_term(e, v.scalar_mul(c));
        return r;
    }

    // Unit test: a Laurent monomial with invertible coefficient.
    std::optional<LaurentPoly> try_invert() const {
        if (terms_.size() != 1) return std::nullopt;
        auto inv = terms_.begin()->second.try_invert();
        if (!inv) return std::nullopt;
        return monomial(var_, -terms_.begin()->first, *inv);
    }

    // x -> x^{-1}
    LaurentPoly flip() const {
        LaurentPoly r(var_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
        return r;
    }

    LaurentPoly map_coeffs(const std::function<C(int, const C&)>& fn) const {
        LaurentPoly r(var_);
        for (const auto& [e, c] : terms_) r.add_term(e, fn(e, c));
        return r;
    }

    // Drops exponents outside [lo, hi].
    LaurentPoly clip(int lo, int hi) const {
        LaurentPoly r(var_);
        for (const auto& [e, c] : terms_)
            if (e >= lo && e <= hi) r.terms_.emplace(e, c);
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        const std::string v = var_.empty() ? "x" : var_;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.to_string() << ")";
            if (e != 0) os << "*" << v << "^" << e;
        }
        return os.str();
    }

  private:
    std::string var_;
    std::map<int, C> terms_;
};

}  // namespace qkz
