#pragma once

#include <gmp.h>

#include <cstdint>
#include <ostream>
#include <optional>
#include <stdexcept>
#include <string>

namespace qkz {

struct arith_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arbitrary-precision rational backed by GMP's mpq_t.
// Invariant: always canonical (lowest terms, denominator > 0), so
// equality is plain mpq_equal.
class Rational {
  public:
    Rational() { mpq_init(v_); }
    Rational(long n) {
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }
    Rational(int n) : Rational(static_cast<long>(n)) {}
    Rational(long num, long den) {
        if (den == 0) throw arith_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        mpq_init(v_);
        mpq_set_si(v_, num, static_cast<unsigned long>(den));
        mpq_canonicalize(v_);
    }
    Rational(const Rational& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rational& operator=(const Rational& o) {
        mpq_set(v_, o.v_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    // Parses "p" or "p/q" in base 10.
    static Rational from_string(const std::string& s) {
        Rational r;
        if (s.empty() || mpq_set_str(r.v_, s.c_str(), 10) != 0)
            throw arith_error("Rational: cannot parse '" + s + "'");
        if (mpz_sgn(mpq_denref(r.v_)) == 0)
            throw arith_error("Rational: zero denominator in '" + s + "'");
        mpq_canonicalize(r.v_);
        return r;
    }

    bool is_zero() const { return mpq_sgn(v_) == 0; }
    bool is_one() const { return mpq_cmp_si(v_, 1, 1) == 0; }
    int sgn() const { return mpq_sgn(v_); }

    Rational operator-() const {
        Rational r;
        mpq_neg(r.v_, v_);
        return r;
    }
    Rational& operator+=(const Rational& o) {
        mpq_add(v_, v_, o.v_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(v_, v_, o.v_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(v_, v_, o.v_);
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw arith_error("Rational: division by zero");
        mpq_div(v_, v_, o.v_);
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_, b.v_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) >= 0; }

    Rational inverse() const {
        if (is_zero()) throw arith_error("Rational: inverse of zero");
        Rational r;
        mpq_inv(r.v_, v_);
        return r;
    }

    bool is_integer() const { return mpz_cmp_si(mpq_denref(v_), 1) == 0; }

    // Valid only when the value fits; used for small bookkeeping quantities.
    long num_long() const { return mpz_get_si(mpq_numref(v_)); }
    long den_long() const { return mpz_get_si(mpq_denref(v_)); }

    std::string to_string() const {
        char* raw = mpq_get_str(nullptr, 10, v_);
        std::string s(raw);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(raw, s.size() + 1);
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

    static Rational factorial(unsigned long n) {
        Rational r(1);
        mpz_fac_ui(mpq_numref(r.v_), n);
        return r;
    }
    static Rational binomial(long n, unsigned long k) {
        // Generalized binomial: n may be negative.
        Rational r(1);
        for (unsigned long i = 0; i < k; ++i) r *= Rational(n - static_cast<long>(i));
        return r / factorial(k);
    }
    static Rational pow(const Rational& base, long e) {
        if (e < 0) return pow(base.inverse(), -e);
        Rational r(1), b = base;
        for (long k = e; k > 0; k >>= 1) {
            if (k & 1) r *= b;
            b *= b;
        }
        return r;
    }

    // Ring-element hooks used by the generic series templates.
    static Rational ring_one() { return Rational(1); }
    Rational scalar_mul(const Rational& c) const { return *this * c; }
    std::optional<Rational> try_invert() const {
        if (is_zero()) return std::nullopt;
        return inverse();
    }

  private:
    mpq_t v_;
};

}  // namespace qkz
