#pragma once

// Small dense univariate polynomial kit: gcds, minimal polynomials of linear
// operators, Berlekamp factorization over small prime fields, rational root
// extraction over Q. Coefficients low-degree first.

#include "extdim/matrix.hpp"

#include <functional>

namespace extdim {

template <Field F>
struct Poly {
    std::vector<F> c;  // c[0] + c[1] x + ...

    static Poly zero() { return {}; }
    static Poly one() { return {{F(1)}}; }
    static Poly x() { return {{F(0), F(1)}}; }

    int deg() const {
        for (int i = int(c.size()) - 1; i >= 0; --i)
            if (!c[size_t(i)].is_zero()) return i;
        return -1;
    }
    bool is_zero() const { return deg() < 0; }
    F lead() const { return deg() < 0 ? F(0) : c[size_t(deg())]; }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    Poly monic() const {
        if (is_zero()) return *this;
        F inv = lead().inv();
        Poly r = *this;
        for (auto& x : r.c) x = x * inv;
        r.trim();
        return r;
    }

    F eval(const F& x) const {
        F acc(0);
        for (int i = deg(); i >= 0; --i) acc = acc * x + c[size_t(i)];
        return acc;
    }
};

template <Field F>
Poly<F> poly_add(const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), F(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

template <Field F>
Poly<F> poly_sub(const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), F(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
}

template <Field F>
Poly<F> poly_mul(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<F>::zero();
    Poly<F> r;
    r.c.assign(a.c.size() + b.c.size() - 1, F(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
}

// quotient and remainder by a nonzero divisor
template <Field F>
std::pair<Poly<F>, Poly<F>> poly_divmod(Poly<F> a, const Poly<F>& b) {
    int db = b.deg();
    if (db < 0) throw std::domain_error("poly division by zero");
    Poly<F> q;
    a.trim();
    while (a.deg() >= db) {
        int shift = a.deg() - db;
        F f = a.lead() / b.lead();
        if (int(q.c.size()) <= shift) q.c.resize(size_t(shift) + 1, F(0));
        q.c[size_t(shift)] += f;
        for (int i = 0; i <= db; ++i)
            a.c[size_t(i + shift)] -= f * b.c[size_t(i)];
        a.trim();
    }
    return {q, a};
}

template <Field F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        (void)q;
        a = b;
        b = r;
    }
    return a.monic();
}

template <Field F>
Poly<F> poly_derivative(const Poly<F>& a) {
    Poly<F> d;
    for (size_t i = 1; i < a.c.size(); ++i) {
        F k(0);
        for (size_t t = 0; t < i; ++t) k += F(1);
        d.c.push_back(k * a.c[i]);
    }
    d.trim();
    return d;
}

// Minimal polynomial of a linear operator given by `apply` on an n-space.
template <Field F>
Poly<F> minimal_polynomial(const std::function<std::vector<F>(const std::vector<F>&)>& apply,
                           int n) {
    if (n == 0) return Poly<F>::one();
    Poly<F> m = Poly<F>::one();
    for (int s = 0; s < n; ++s) {
        if (m.deg() >= n) break;
        std::vector<F> v(size_t(n), F(0));
        v[size_t(s)] = F(1);
        // local minimal polynomial on the Krylov space of v
        Span<F> span(n);
        std::vector<std::vector<F>> iterates;
        std::vector<F> cur = v;
        Poly<F> local;
        while (true) {
            if (!span.contains(cur)) {
                iterates.push_back(cur);
                span.insert(cur);
                cur = apply(cur);
                continue;
            }
            // cur = sum of previous iterates: solve for coefficients
            int k = int(iterates.size());
            Mat<F> a(n, k);
            Mat<F> b(n, 1);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < k; ++j) a(i, j) = iterates[size_t(j)][size_t(i)];
                b(i, 0) = cur[size_t(i)];
            }
            auto sol = solve(a, b);
            if (!sol) throw std::logic_error("minimal_polynomial: inconsistent Krylov solve");
            local.c.assign(size_t(k) + 1, F(0));
            for (int j = 0; j < k; ++j) local.c[size_t(j)] = -(*sol)(j, 0);
            local.c[size_t(k)] = F(1);
            break;
        }
        // m = lcm(m, local)
        Poly<F> g = poly_gcd(m, local);
        m = poly_divmod(poly_mul(m, local), g).first.monic();
    }
    return m;
}

// ---------------------------------------------------------------------------
// Factorization over F_p (Berlekamp, exhaustive over the small field)

inline long long poly_char(const Fp& x) { return x.modulus(); }

inline Poly<Fp> poly_pow_mod(Poly<Fp> base, long long e, const Poly<Fp>& mod) {
    Poly<Fp> r = Poly<Fp>::one();
    while (e > 0) {
        if (e & 1) r = poly_divmod(poly_mul(r, base), mod).second;
        base = poly_divmod(poly_mul(base, base), mod).second;
        e >>= 1;
    }
    return r;
}

// distinct monic irreducible factors (multiplicities dropped)
inline std::vector<Poly<Fp>> factor_distinct_fp(Poly<Fp> f, long long p) {
    std::vector<Poly<Fp>> out;
    for (auto& c : f.c) c = c + Fp(0, p);  // bind every coefficient to the modulus
    f = f.monic();
    if (f.deg() <= 0) return out;

    // peel to the square-free part
    while (true) {
        Poly<Fp> d = poly_derivative(f);
        if (d.is_zero()) {
            // f(x) = g(x^p); over the prime field coefficients are fixed by
            // Frobenius, so g just reindexes
            Poly<Fp> g;
            for (size_t i = 0; i < f.c.size(); i += size_t(p)) g.c.push_back(f.c[i]);
            f = g.monic();
            continue;
        }
        Poly<Fp> g = poly_gcd(f, d);
        if (g.deg() <= 0) break;
        f = poly_divmod(f, g).first.monic();
    }

    std::vector<Poly<Fp>> work{f};
    while (!work.empty()) {
        Poly<Fp> h = work.back().monic();
        work.pop_back();
        int n = h.deg();
        if (n <= 0) continue;
        if (n == 1) { out.push_back(h); continue; }
        // Berlekamp matrix: rows are x^{ip} mod h minus x^i
        Mat<Fp> B(n, n);
        for (int i = 0; i < n; ++i) {
            Poly<Fp> xi;
            xi.c.assign(size_t(i) + 1, Fp(0, p));
            xi.c[size_t(i)] = Fp(1, p);
            Poly<Fp> r = poly_pow_mod(xi, p, h);
            for (int j = 0; j < n; ++j) {
                Fp v = j < int(r.c.size()) ? r.c[size_t(j)] : Fp(0, p);
                B(j, i) = v - (i == j ? Fp(1, p) : Fp(0, p));
            }
        }
        Mat<Fp> K = kernel(B);
        if (K.cols() <= 1) { out.push_back(h); continue; }
        // a non-constant element of the Berlekamp subalgebra splits h
        Poly<Fp> v;
        for (int s = 0; s < K.cols(); ++s) {
            Poly<Fp> cand;
            for (int j = 0; j < n; ++j) cand.c.push_back(K(j, s));
            cand.trim();
            if (cand.deg() >= 1) { v = cand; break; }
        }
        bool split = false;
        for (long long cval = 0; cval < p && !split; ++cval) {
            Poly<Fp> shifted = v;
            if (shifted.c.empty()) shifted.c.push_back(Fp(0, p));
            shifted.c[0] -= Fp(cval, p);
            Poly<Fp> g = poly_gcd(h, shifted);
            if (g.deg() >= 1 && g.deg() < h.deg()) {
                work.push_back(g);
                work.push_back(poly_divmod(h, g).first);
                split = true;
            }
        }
        if (!split) out.push_back(h);  // cannot happen for p prime
    }
    // dedup
    std::vector<Poly<Fp>> ded;
    for (auto& g : out) {
        bool seen = false;
        for (auto& o : ded)
            if (o.c.size() == g.c.size() && poly_sub(o, g).is_zero()) seen = true;
        if (!seen) ded.push_back(g);
    }
    return ded;
}

// ---------------------------------------------------------------------------
// Rational roots over Q (budgeted divisor search)

inline std::vector<Rat> rational_roots(const Poly<Rat>& f_in) {
    Poly<Rat> f = f_in;
    f.trim();
    std::vector<Rat> roots;
    if (f.deg() <= 0) return roots;
    // strip powers of x
    size_t low = 0;
    while (low < f.c.size() && f.c[low].is_zero()) ++low;
    if (low > 0) {
        roots.push_back(Rat(0));
        f.c.erase(f.c.begin(), f.c.begin() + long(low));
    }
    if (f.deg() <= 0) return roots;

    using big = boost::multiprecision::cpp_int;
    big lcm_den = 1;
    for (auto& x : f.c) lcm_den = lcm(lcm_den, big(x.den()));
    std::vector<big> ic;
    for (auto& x : f.c) ic.push_back(x.num() * (lcm_den / x.den()));
    big a0 = ic.front(), an = ic.back();
    if (a0 < 0) a0 = -a0;
    if (an < 0) an = -an;

    auto divisors = [](big n) {
        std::vector<big> out;
        if (n == 0) return out;
        big cap = 100000;
        for (big d = 1; d * d <= n && d <= cap; ++d)
            if (n % d == 0) {
                out.push_back(d);
                out.push_back(n / d);
            }
        return out;
    };
    auto p_div = divisors(a0), q_div = divisors(an);
    std::vector<Rat> seen;
    for (auto& pd : p_div)
        for (auto& qd : q_div)
            for (int sg : {1, -1}) {
                Rat cand{Rat::big(sg * pd) / Rat::big(qd)};
                bool dup = false;
                for (auto& s : seen)
                    if (s == cand) dup = true;
                if (dup) continue;
                seen.push_back(cand);
                if (f.eval(cand).is_zero()) roots.push_back(cand);
            }
    return roots;
}

}  // namespace extdim
