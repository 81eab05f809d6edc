#pragma once

// Exact coefficient fields for the toolkit: arbitrary-precision rationals and
// prime fields with a runtime modulus. No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace extdim {

struct FieldSpec {
    enum class Kind { Rationals, Prime };
    Kind kind = Kind::Rationals;
    long long p = 0;  // modulus, meaningful for Kind::Prime only

    bool operator==(const FieldSpec&) const = default;

    std::string str() const {
        return kind == Kind::Rationals ? "Q" : ("F " + std::to_string(p));
    }
};

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Rationals

class Rat {
  public:
    using big = boost::multiprecision::cpp_rational;

    Rat() = default;
    Rat(long long v) : v_(v) {}
    Rat(long long num, long long den) : v_(num, den) {}
    explicit Rat(big v) : v_(std::move(v)) {}

    static Rat from_spec(const FieldSpec& fs, long long num, long long den = 1) {
        (void)fs;
        return Rat(num, den);
    }

    Rat operator+(const Rat& o) const { return Rat(v_ + o.v_); }
    Rat operator-(const Rat& o) const { return Rat(v_ - o.v_); }
    Rat operator*(const Rat& o) const { return Rat(v_ * o.v_); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(v_ / o.v_);
    }
    Rat operator-() const { return Rat(-v_); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }
    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(big(1) / v_);
    }

    const big& value() const { return v_; }
    boost::multiprecision::cpp_int num() const { return numerator(v_); }
    boost::multiprecision::cpp_int den() const { return denominator(v_); }

    Rat bound_to(const FieldSpec&) const { return *this; }

    std::string str() const {
        if (denominator(v_) == 1) return numerator(v_).str();
        return numerator(v_).str() + "/" + denominator(v_).str();
    }

  private:
    big v_ = 0;
};

// ---------------------------------------------------------------------------
// Prime field with runtime modulus.
//
// Elements constructed from bare integer literals carry modulus 0 ("unbound")
// and behave as exact integers until they meet a bound element; this lets
// generic code write F(0), F(1) without threading a field context.

class Fp {
  public:
    Fp() = default;
    Fp(long long v) : v_(v) {}
    Fp(long long v, long long p) : v_(v), p_(p) { normalize(); }

    static Fp from_spec(const FieldSpec& fs, long long num, long long den = 1) {
        Fp r(num, fs.p);
        if (den != 1) r = r / Fp(den, fs.p);
        return r;
    }

    long long modulus() const { return p_; }
    long long raw() const { return v_; }

    Fp operator+(const Fp& o) const { auto [a, b, p] = bind(*this, o); return Fp(a + b, p); }
    Fp operator-(const Fp& o) const { auto [a, b, p] = bind(*this, o); return Fp(a - b, p); }
    Fp operator*(const Fp& o) const { auto [a, b, p] = bind(*this, o); return Fp(a * b, p); }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp operator-() const { return p_ ? Fp(p_ - v_, p_) : Fp(-v_); }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    bool operator==(const Fp& o) const { auto [a, b, p] = bind(*this, o); (void)p; return a == b; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return p_ ? v_ == 1 : v_ == 1; }

    Fp inv() const {
        if (p_ == 0) {
            if (v_ == 1 || v_ == -1) return *this;
            throw std::domain_error("Fp: inverse of unbound non-unit integer");
        }
        if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
        long long t = 0, nt = 1, r = p_, nr = v_;
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (r != 1) throw std::domain_error("Fp: modulus not prime");
        return Fp(t, p_);
    }

    std::string str() const { return std::to_string(v_); }

    // attach the modulus to a literal-born constant
    Fp bound_to(const FieldSpec& fs) const { return p_ ? *this : Fp(v_, fs.p); }

  private:
    long long v_ = 0;
    long long p_ = 0;

    void normalize() {
        if (p_) {
            v_ %= p_;
            if (v_ < 0) v_ += p_;
        }
    }

    struct Bound { long long a, b, p; };
    static Bound bind(const Fp& x, const Fp& y) {
        long long p = x.p_ ? x.p_ : y.p_;
        if (x.p_ && y.p_ && x.p_ != y.p_)
            throw std::logic_error("Fp: mixed moduli");
        auto n = [p](long long v) { if (!p) return v; v %= p; return v < 0 ? v + p : v; };
        return {n(x.v_), n(y.v_), p};
    }
};

template <class F>
concept Field = requires(F a, F b, const FieldSpec& fs) {
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.inv() } -> std::convertible_to<F>;
    { a.str() } -> std::convertible_to<std::string>;
    { F::from_spec(fs, 1, 1) } -> std::convertible_to<F>;
    F(0);
    F(1);
};

static_assert(Field<Rat>);
static_assert(Field<Fp>);

}  // namespace extdim
