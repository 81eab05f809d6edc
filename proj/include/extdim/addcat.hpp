#pragma once

// add-closure membership and isomorphism testing, by pure linear algebra:
// M is a direct summand of a finite sum of copies of the components of T iff
// the identity of M lies in the span of the composites f . g with
// g : M -> T_i and f : T_i -> M. No decompositions involved, so these tests
// are total and deterministic.

#include "extdim/rep.hpp"

namespace extdim {

template <Field F>
std::vector<F> flatten_endo(const Map<F>& f) {
    std::vector<F> v;
    for (const auto& b : f.block)
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) v.push_back(b(i, j));
    return v;
}

// Formal direct sum of components; never materialized unless needed.
template <Field F>
using GenSet = std::vector<RepPtr<F>>;

template <Field F>
bool is_in_add(const RepPtr<F>& m, const GenSet<F>& gens) {
    if (m->total() == 0) return true;
    int width = 0;
    for (int d : m->dim) width += d * d;
    Span<F> span(width);
    auto id = flatten_endo(identity_map(m));
    for (const auto& t : gens) {
        if (t->alg != m->alg) throw RepError("is_in_add: mixed algebras");
        if (t->total() == 0) continue;
        auto gs = hom_space(m, t);
        auto fs = hom_space(t, m);
        for (const auto& g : gs)
            for (const auto& f : fs) {
                if (span.insert(flatten_endo(compose(f, g))) && span.contains(id)) return true;
            }
    }
    return span.contains(id);
}

template <Field F>
bool is_in_add(const RepPtr<F>& m, const RepPtr<F>& t) {
    return is_in_add(m, GenSet<F>{t});
}

// M isomorphic to a direct summand of N
template <Field F>
bool is_summand(const RepPtr<F>& m, const RepPtr<F>& n) {
    return is_in_add(m, GenSet<F>{n});
}

template <Field F>
bool is_iso(const RepPtr<F>& m, const RepPtr<F>& n) {
    if (m->alg != n->alg || m->dim != n->dim) return false;
    return is_summand(m, n);
}

// Explicit split pair for M as a summand of a power of N: returns
// (host = N^k, iota : M -> host, pi : host -> M) with pi . iota = id.
template <Field F>
std::optional<std::tuple<RepPtr<F>, Map<F>, Map<F>>> summand_witness(const RepPtr<F>& m,
                                                                     const RepPtr<F>& n) {
    if (m->total() == 0) {
        auto z = zero_rep(m->alg);
        return std::make_tuple(z, zero_map(m, z), zero_map(z, m));
    }
    auto gs = hom_space(m, n);
    auto fs = hom_space(n, m);
    int width = 0;
    for (int d : m->dim) width += d * d;
    int pairs = int(gs.size() * fs.size());
    if (pairs == 0) return std::nullopt;
    Mat<F> sys(width, pairs);
    int col = 0;
    for (size_t a = 0; a < fs.size(); ++a)
        for (size_t b = 0; b < gs.size(); ++b) {
            auto v = flatten_endo(compose(fs[a], gs[b]));
            for (int i = 0; i < width; ++i) sys(i, col) = v[size_t(i)];
            ++col;
        }
    Mat<F> rhs(width, 1);
    auto id = flatten_endo(identity_map(m));
    for (int i = 0; i < width; ++i) rhs(i, 0) = id[size_t(i)];
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;

    std::vector<std::pair<size_t, size_t>> used;
    std::vector<F> coef;
    col = 0;
    for (size_t a = 0; a < fs.size(); ++a)
        for (size_t b = 0; b < gs.size(); ++b) {
            if (!(*sol)(col, 0).is_zero()) {
                used.push_back({a, b});
                coef.push_back((*sol)(col, 0));
            }
            ++col;
        }
    std::vector<RepPtr<F>> copies(used.size(), n);
    auto sum = direct_sum(m->alg, copies);
    RepPtr<F> host = used.empty() ? zero_rep(m->alg) : sum.sum;
    Map<F> iota = zero_map(m, host);
    Map<F> pi = zero_map(host, m);
    for (size_t k = 0; k < used.size(); ++k) {
        auto& [a, b] = used[k];
        iota = map_add(iota, compose(sum.inj[k], gs[b]));
        pi = map_add(pi, compose(map_scaled(fs[a], coef[k]), sum.proj[k]));
    }
    if (!is_identity(compose(pi, iota)))
        throw RepError("summand_witness: internal, split pair does not compose to id");
    return std::make_tuple(host, iota, pi);
}

}  // namespace extdim
