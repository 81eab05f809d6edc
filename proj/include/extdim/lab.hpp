#pragma once

// Brute-force laboratory over small prime fields: exhaustive module
// enumeration, the diamond operator on enumerated universes, bounded
// membership search with certificate extraction, a representation-finite
// extension-dimension estimator, the greedy weak-resolution-dimension upper
// bound, and the two-term syzygy resolution check.
//
// Everything here is bounded search. A positive answer always carries a
// verified witness; a miss is "Unknown", never a non-membership claim
// (except at depth 1, where add-membership is decidable).

#include "extdim/construct.hpp"
#include "extdim/decompose.hpp"

#include <functional>
#include <random>

namespace extdim {

struct SearchBudget {
    int max_total_dim = 8;             // dimension cap for enumerated modules
    long long max_ext_classes = 4096;  // Ext-class combinations per end pair
    long long max_nodes = 2000000;     // raw enumeration cap
    int max_multiplicity = 3;          // per-component multiplicity in add-combinations
    uint64_t seed = 0xE3D1;

    void validate() const {
        if (max_total_dim <= 0 || max_ext_classes <= 0 || max_nodes <= 0 || max_multiplicity <= 0)
            throw std::invalid_argument("search budget caps must be positive");
    }
};

// iso-class registry keyed by dimension vector, certified by is_iso
template <Field F>
class IsoRegistry {
  public:
    int intern(const RepPtr<F>& m) {
        int idx = find(m);
        if (idx >= 0) return idx;
        reps_.push_back(m);
        return int(reps_.size()) - 1;
    }
    int find(const RepPtr<F>& m) const {
        for (size_t i = 0; i < reps_.size(); ++i)
            if (reps_[i]->dim == m->dim && is_iso(reps_[i], m)) return int(i);
        return -1;
    }
    const std::vector<RepPtr<F>>& reps() const { return reps_; }
    size_t size() const { return reps_.size(); }

  private:
    std::vector<RepPtr<F>> reps_;
};

// ---------------------------------------------------------------------------
// Generation machinery over any exact field

template <Field F>
std::vector<std::pair<size_t, Map<F>>> all_homs(const GenSet<F>& gens, const RepPtr<F>& x) {
    std::vector<std::pair<size_t, Map<F>>> out;
    for (size_t i = 0; i < gens.size(); ++i)
        for (auto& h : hom_space(gens[i], x)) out.push_back({i, h});
    return out;
}

// the universal map from a sum of generator copies (one per hom-basis
// element) onto x; epi iff x is generated by add(gens)
template <Field F>
std::pair<RepPtr<F>, Map<F>> universal_cover(HomCtx<F>& ctx, const GenSet<F>& gens,
                                             const RepPtr<F>& x) {
    auto homs = all_homs(gens, x);
    std::vector<RepPtr<F>> parts;
    for (auto& [i, h] : homs) parts.push_back(h.src), (void)i;
    if (parts.empty()) {
        auto z = zero_rep(ctx.alg());
        return {z, zero_map(z, x)};
    }
    auto sum = direct_sum(ctx.alg(), parts);
    Map<F> f = zero_map(sum.sum, x);
    for (size_t k = 0; k < homs.size(); ++k)
        f = map_add(f, compose(homs[k].second, sum.proj[k]));
    return {sum.sum, f};
}

template <Field F>
struct WresolResult {
    bool known = false;  // AtMost(value); otherwise Unknown
    int value = 0;
    Resolution<F> resolution;
    std::string note;
};

// Greedy upper bound for the least length of an exact add(gens)-resolution
// of x: build the universal cover, recurse on kernels, stop when a kernel
// lands in add(gens). Sound but not the infimum.
template <Field F>
WresolResult<F> wresoldim_greedy(HomCtx<F>& ctx, const GenSet<F>& gens, const RepPtr<F>& x,
                                 int cutoff) {
    WresolResult<F> out;
    out.resolution.target = x;
    if (x->is_zero() || is_in_add(x, gens)) {
        out.known = true;
        out.value = 0;
        out.resolution.terms.push_back(x);
        out.resolution.maps.push_back(identity_map(x));
        return out;
    }
    RepPtr<F> cur = x;
    std::optional<Map<F>> into;  // kernel inclusion into the previous cover
    for (int i = 0; i <= cutoff; ++i) {
        auto [cover, epi] = universal_cover(ctx, gens, cur);
        if (!is_epi(epi)) {
            out.note = "target is not generated by the given modules";
            return out;
        }
        out.resolution.terms.push_back(cover);
        out.resolution.maps.push_back(into ? compose(*into, epi) : epi);
        auto ker = kernel_of(epi);
        if (ker.rep()->is_zero()) {
            out.known = true;
            out.value = i;
            break;
        }
        if (is_in_add(ker.rep(), gens)) {
            out.resolution.terms.push_back(ker.rep());
            out.resolution.maps.push_back(ker.incl);
            out.known = true;
            out.value = i + 1;
            break;
        }
        into = ker.incl;
        cur = ker.rep();
    }
    if (!out.known) {
        out.note = "cutoff exceeded";
        return out;
    }
    if (!resolution_ok(out.resolution))
        throw std::logic_error("wresoldim_greedy: built an inexact resolution");
    return out;
}

struct TwoTermVerdict {
    enum class Value { True, False, Unknown };
    Value value = Value::Unknown;
    std::string note;
};

// Does X admit 0 -> V1 -> V0 -> X -> 0 with V1, V0 in add V? Positive
// answers are witnessed; "False" only for the decidable non-generation case.
template <Field F>
TwoTermVerdict two_term_check(HomCtx<F>& ctx, const GenSet<F>& v, const RepPtr<F>& x,
                              uint64_t seed = 0xE3D1) {
    TwoTermVerdict out;
    if (x->is_zero() || is_in_add(x, v)) {
        out.value = TwoTermVerdict::Value::True;
        return out;
    }
    auto [cover, epi] = universal_cover(ctx, v, x);
    if (!is_epi(epi)) {
        // every map from add V factors through the universal cover, so no
        // epi exists at all: a definite negative
        out.value = TwoTermVerdict::Value::False;
        out.note = "not generated by add V";
        return out;
    }
    if (is_in_add(kernel_of(epi).rep(), v)) {
        out.value = TwoTermVerdict::Value::True;
        return out;
    }
    // bounded fallback over sub-multisets of the universal cover
    std::mt19937_64 eng(seed);
    auto homs = all_homs(v, x);
    for (int trial = 0; trial < 64 && !homs.empty(); ++trial) {
        std::vector<std::pair<size_t, Map<F>>> chosen;
        for (auto& h : homs)
            if (eng() & 1) chosen.push_back(h);
        if (chosen.empty()) continue;
        std::vector<RepPtr<F>> parts;
        for (auto& [i, h] : chosen) parts.push_back(h.src), (void)i;
        auto sum = direct_sum(ctx.alg(), parts);
        Map<F> f = zero_map(sum.sum, x);
        for (size_t k = 0; k < chosen.size(); ++k)
            f = map_add(f, compose(chosen[k].second, sum.proj[k]));
        if (!is_epi(f)) continue;
        if (is_in_add(kernel_of(f).rep(), v)) {
            out.value = TwoTermVerdict::Value::True;
            return out;
        }
    }
    out.value = TwoTermVerdict::Value::Unknown;
    out.note = "multiplicity budget exhausted";
    return out;
}

template <Field F>
class Lab {
  public:
    Lab(HomCtx<F>& ctx, SearchBudget budget = {}) : ctx_(ctx), budget_(budget) {
        budget_.validate();
        if (ctx.alg()->field().kind != FieldSpec::Kind::Prime)
            throw std::invalid_argument("brute-force search needs a small prime field");
    }

    HomCtx<F>& ctx() { return ctx_; }
    const SearchBudget& budget() const { return budget_; }

    // ----- enumeration -----

    // all modules of total dimension <= cap, up to isomorphism
    std::vector<RepPtr<F>> enumerate_modules(int dim_cap) {
        const Quiver& q = ctx_.alg()->quiver();
        int nv = q.nv();
        IsoRegistry<F> reg;
        std::vector<int> dims(size_t(nv), 0);
        long long nodes = 0;
        std::function<void(int, int)> walk = [&](int v, int used) {
            if (v == nv) {
                enumerate_matrices(dims, nodes, reg);
                return;
            }
            for (int d = 0; d + used <= dim_cap; ++d) {
                dims[size_t(v)] = d;
                walk(v + 1, used + d);
            }
            dims[size_t(v)] = 0;
        };
        walk(0, 0);
        return reg.reps();
    }

    std::vector<RepPtr<F>> enumerate_indecomposables(int dim_cap) {
        IsoRegistry<F> reg;
        for (const auto& m : enumerate_modules(dim_cap)) {
            if (m->is_zero()) continue;
            for (auto& [piece, mult] : decompose(m, budget_.seed).parts) {
                (void)mult;
                reg.intern(piece);
            }
        }
        auto out = reg.reps();
        sort_classes(out);
        return out;
    }

    // ----- the diamond operator on enumerated universes -----

    // indecomposable generators of <U1>_1 <> <U2>_1 within the budget caps
    std::vector<RepPtr<F>> diamond(const std::vector<RepPtr<F>>& u1,
                                   const std::vector<RepPtr<F>>& u2, bool* complete = nullptr) {
        bool full = true;
        IsoRegistry<F> out;
        for_each_middle(indec_closure(u1), indec_closure(u2), full,
                        [&](const SES<F>& ses) {
                            for (auto& [piece, mult] : decompose(ses.middle(), budget_.seed).parts)
                                (void)mult, out.intern(piece);
                        });
        if (complete) *complete = full;
        auto res = out.reps();
        sort_classes(res);
        return res;
    }

    // result[k-1] = indecomposable generators of <T>_k
    std::vector<std::vector<RepPtr<F>>> layers(const std::vector<RepPtr<F>>& t, int n,
                                               bool* complete = nullptr) {
        bool full = true;
        std::vector<std::vector<RepPtr<F>>> out;
        out.push_back(indec_closure(t));
        sort_classes(out.front());
        for (int k = 2; k <= n; ++k) {
            bool step_full = true;
            out.push_back(diamond(out.front(), out.back(), &step_full));
            full = full && step_full;
        }
        if (complete) *complete = full;
        return out;
    }

    // ----- membership search with certificate extraction -----

    struct TnSearch {
        enum class Verdict { Found, No, Unknown };
        Verdict verdict = Verdict::Unknown;
        CertPtr<F> cert;  // set when Found; verified by the caller's verifier
    };

    TnSearch tn_membership(const RepPtr<F>& m, const std::vector<RepPtr<F>>& t, int n) {
        TnSearch out;
        if (n <= 0) {
            out.verdict = m->is_zero() ? TnSearch::Verdict::Found : TnSearch::Verdict::No;
            if (m->is_zero()) out.cert = cert_zero(m);
            return out;
        }
        if (is_in_add(m, t)) {
            out.verdict = TnSearch::Verdict::Found;
            out.cert = cert_leaf(m);
            return out;
        }
        if (n == 1) {
            out.verdict = TnSearch::Verdict::No;  // depth 1 is decidable
            return out;
        }

        struct ClassEntry {
            RepPtr<F> rep;
            int level = 1;
            std::optional<SES<F>> witness;   // rep is a summand of witness middle
            std::vector<int> quot_classes;   // Sum decomposition of the right end
        };
        std::vector<ClassEntry> classes;
        IsoRegistry<F> reg;
        auto intern = [&](const RepPtr<F>& r, int level, std::optional<SES<F>> w,
                          std::vector<int> qc) {
            int before = int(reg.size());
            int idx = reg.intern(r);
            if (idx == before)
                classes.push_back({reg.reps().back(), level, std::move(w), std::move(qc)});
            return idx;
        };

        for (auto& g : indec_closure(t)) intern(g, 1, std::nullopt, {});

        for (int k = 2; k <= n; ++k) {
            std::vector<RepPtr<F>> lvl1;
            for (auto& ce : classes)
                if (ce.level == 1) lvl1.push_back(ce.rep);
            std::vector<RepPtr<F>> prev;
            std::vector<int> prev_idx;
            for (size_t i = 0; i < classes.size(); ++i)
                if (classes[i].level <= k - 1) {
                    prev.push_back(classes[i].rep);
                    prev_idx.push_back(int(i));
                }

            bool full = true;
            auto subs = add_combos(lvl1);
            auto quots = add_combos_tagged(prev, prev_idx);
            for (const auto& a : subs)
                for (const auto& [b, bclasses] : quots) {
                    if (a->total() + b->total() > budget_.max_total_dim) continue;
                    if (a->is_zero() && b->is_zero()) continue;
                    for_each_extension(a, b, full, [&](const SES<F>& ses) {
                        for (auto& [piece, mult] : decompose(ses.middle(), budget_.seed).parts)
                            (void)mult, intern(piece, k, ses, bclasses);
                    });
                }

            std::vector<RepPtr<F>> universe;
            for (auto& ce : classes) universe.push_back(ce.rep);
            if (is_in_add(m, universe)) {
                out.verdict = TnSearch::Verdict::Found;
                out.cert = extract_cert(m, classes);
                return out;
            }
            (void)full;
        }
        out.verdict = TnSearch::Verdict::Unknown;
        return out;
    }

    // ----- representation-finite extension dimension -----

    struct ExtDimResult {
        bool exact = false;  // Exactly(value) when the closure checks certify
        int value = 0;
        std::vector<RepPtr<F>> generator;
        std::string note;
    };

    ExtDimResult extension_dim(int dim_cap) {
        ExtDimResult out;
        out.generator = enumerate_indecomposables(dim_cap);

        bool complete = true;
        std::string why;
        IsoRegistry<F> reg;
        for (auto& r : out.generator) reg.intern(r);
        auto check_in = [&](const RepPtr<F>& x, const char* what) {
            if (!complete || x->is_zero()) return;
            if (x->total() > dim_cap) {
                complete = false;
                why = std::string(what) + " leaves the dimension cap";
                return;
            }
            for (auto& [piece, mult] : decompose(x, budget_.seed).parts) {
                (void)mult;
                if (reg.find(piece) < 0) {
                    complete = false;
                    why = std::string(what) + " found a new class";
                }
            }
        };
        for (auto& r : out.generator) {
            check_in(ctx_.syzygy(r, 1), "syzygy");
            check_in(ctx_.syzygy(r, -1), "cosyzygy");
            check_in(radical(r).rep(), "radical");
        }
        bool ext_full = true;
        for (auto& c : diamond(out.generator, out.generator, &ext_full))
            if (reg.find(c) < 0) {
                complete = false;
                why = "extension middle terms found a new class";
            }
        if (!ext_full) {
            complete = false;
            why = "extension enumeration hit the budget";
        }

        if (complete) {
            out.exact = true;
            out.value = 0;
            return out;
        }
        out.exact = false;
        out.note = why;
        auto universe = enumerate_modules(dim_cap);
        for (int k = 1; k <= dim_cap + 2; ++k) {
            auto ls = layers(out.generator, k);
            std::vector<RepPtr<F>> all;
            for (auto& l : ls)
                for (auto& r : l) all.push_back(r);
            bool covered = true;
            for (auto& u : universe)
                if (!u->is_zero() && !is_in_add(u, all)) {
                    covered = false;
                    break;
                }
            if (covered) {
                out.value = k - 1;
                return out;
            }
        }
        out.value = dim_cap + 1;
        return out;
    }

  private:
    HomCtx<F>& ctx_;
    SearchBudget budget_;

    static void sort_classes(std::vector<RepPtr<F>>& v) {
        std::sort(v.begin(), v.end(), [](const RepPtr<F>& a, const RepPtr<F>& b) {
            if (a->total() != b->total()) return a->total() < b->total();
            return a->dim < b->dim;
        });
    }

    void enumerate_matrices(const std::vector<int>& dims, long long& nodes, IsoRegistry<F>& reg) {
        const Quiver& q = ctx_.alg()->quiver();
        long long p = ctx_.alg()->field().p;
        long long entries = 0;
        for (int a = 0; a < q.na(); ++a)
            entries += dims[size_t(q.arrows[size_t(a)].src)] * dims[size_t(q.arrows[size_t(a)].tgt)];
        long long count = 1;
        for (long long e = 0; e < entries; ++e) {
            count *= p;
            if (count > budget_.max_nodes)
                throw std::runtime_error("enumeration exceeds the node budget");
        }
        for (long long code = 0; code < count; ++code) {
            if (++nodes > budget_.max_nodes)
                throw std::runtime_error("enumeration exceeds the node budget");
            long long c = code;
            std::vector<Mat<F>> mat;
            for (int a = 0; a < q.na(); ++a) {
                int r = dims[size_t(q.arrows[size_t(a)].tgt)];
                int cl = dims[size_t(q.arrows[size_t(a)].src)];
                Mat<F> mt(r, cl);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < cl; ++j) {
                        mt(i, j) = F::from_spec(ctx_.alg()->field(), c % p);
                        c /= p;
                    }
                mat.push_back(std::move(mt));
            }
            auto rep = make_rep(ctx_.alg(), dims, std::move(mat));
            if (!relations_vanish(*rep)) continue;
            reg.intern(rep);
        }
    }

    std::vector<RepPtr<F>> indec_closure(const std::vector<RepPtr<F>>& mods) {
        IsoRegistry<F> reg;
        for (auto& m : mods) {
            if (m->is_zero()) continue;
            for (auto& [piece, mult] : decompose(m, budget_.seed).parts) (void)mult, reg.intern(piece);
        }
        return reg.reps();
    }

    // formal sums of the given classes within the caps; parts are grouped by
    // ascending class index
    std::vector<RepPtr<F>> add_combos(const std::vector<RepPtr<F>>& indecs) {
        std::vector<RepPtr<F>> out;
        std::vector<int> dummy;
        for (size_t i = 0; i < indecs.size(); ++i) dummy.push_back(int(i));
        for (auto& [r, c] : add_combos_tagged(indecs, dummy)) out.push_back(r), (void)c;
        return out;
    }

    std::vector<std::pair<RepPtr<F>, std::vector<int>>> add_combos_tagged(
        const std::vector<RepPtr<F>>& indecs, const std::vector<int>& tags) {
        std::vector<std::pair<RepPtr<F>, std::vector<int>>> out;
        std::vector<int> mult(indecs.size(), 0);
        std::function<void(size_t, int)> walk = [&](size_t i, int used) {
            if (i == indecs.size()) {
                std::vector<RepPtr<F>> parts;
                std::vector<int> cls;
                for (size_t k = 0; k < indecs.size(); ++k)
                    for (int c = 0; c < mult[k]; ++c) {
                        parts.push_back(indecs[k]);
                        cls.push_back(tags[k]);
                    }
                RepPtr<F> sum =
                    parts.empty() ? zero_rep(ctx_.alg()) : direct_sum(ctx_.alg(), parts).sum;
                out.push_back({sum, cls});
                return;
            }
            for (int m = 0; m <= budget_.max_multiplicity; ++m) {
                int add = m * indecs[i]->total();
                if (used + add > budget_.max_total_dim) break;
                mult[i] = m;
                walk(i + 1, used + add);
            }
            mult[i] = 0;
        };
        walk(0, 0);
        return out;
    }

    // every extension middle 0 -> a -> X -> b -> 0 within the class budget
    template <class Fn>
    void for_each_extension(const RepPtr<F>& a, const RepPtr<F>& b, bool& full, Fn&& fn) {
        long long p = ctx_.alg()->field().p;
        auto ext = ctx_.ext1(b, a);
        long long classes = 1;
        for (int i = 0; i < ext.dimension; ++i) {
            classes *= p;
            if (classes > budget_.max_ext_classes) break;
        }
        if (classes > budget_.max_ext_classes) {
            full = false;
            classes = budget_.max_ext_classes;
        }
        for (long long code = 0; code < classes; ++code) {
            if (ext.dimension == 0 || code == 0) {
                fn(split_ses(ctx_.alg(), a, b));
            } else {
                Map<F> z = zero_map(ctx_.syzygy(b, 1), a);
                long long c = code;
                for (int i = 0; i < ext.dimension; ++i) {
                    long long coef = c % p;
                    c /= p;
                    if (coef)
                        z = map_add(z, map_scaled(ext.cocycles[size_t(i)],
                                                  F::from_spec(ctx_.alg()->field(), coef)));
                }
                fn(ctx_.extension_from_cocycle(b, a, z));
            }
        }
    }

    template <class Fn>
    void for_each_middle(const std::vector<RepPtr<F>>& i1, const std::vector<RepPtr<F>>& i2,
                         bool& full, Fn&& fn) {
        auto combos1 = add_combos(i1);
        auto combos2 = add_combos(i2);
        for (const auto& a : combos1)
            for (const auto& b : combos2) {
                if (a->total() + b->total() > budget_.max_total_dim) continue;
                if (a->is_zero() && b->is_zero()) continue;
                for_each_extension(a, b, full, fn);
            }
    }

    // certificate assembly from the layered search records
    template <class Classes>
    CertPtr<F> extract_cert(const RepPtr<F>& m, const Classes& classes) {
        std::map<const Rep<F>*, CertPtr<F>> memo;
        std::function<CertPtr<F>(int)> class_cert = [&](int idx) -> CertPtr<F> {
            const auto& ce = classes[size_t(idx)];
            auto it = memo.find(ce.rep.get());
            if (it != memo.end()) return it->second;
            CertPtr<F> c;
            if (ce.level == 1 || !ce.witness) {
                c = cert_leaf(ce.rep);
            } else {
                const SES<F>& ses = *ce.witness;
                CertPtr<F> sub_cert =
                    ses.left()->is_zero() ? cert_zero(ses.left()) : cert_leaf(ses.left());
                std::vector<CertPtr<F>> parts;
                for (int q : ce.quot_classes) parts.push_back(class_cert(q));
                CertPtr<F> quot_cert;
                if (parts.empty()) quot_cert = cert_zero(ses.right());
                else if (parts.size() == 1 && rep_equal(*parts[0]->module, *ses.right()))
                    quot_cert = parts[0];
                else quot_cert = cert_sum(ctx_.alg(), parts);
                if (!rep_equal(*quot_cert->module, *ses.right()))
                    throw std::logic_error("tn search: quotient misassembled");
                CertPtr<F> ext = cert_ext(ses, sub_cert, quot_cert);
                c = summand_wrap(ce.rep, ext);
            }
            memo[ce.rep.get()] = c;
            return c;
        };

        std::vector<CertPtr<F>> parts;
        auto dec = decompose(m, budget_.seed);
        for (auto& [piece, mult] : dec.parts) {
            int idx = -1;
            for (size_t i = 0; i < classes.size(); ++i)
                if (is_iso(classes[i].rep, piece)) {
                    idx = int(i);
                    break;
                }
            if (idx < 0) throw std::logic_error("tn search: summand not in the universe");
            for (int c = 0; c < mult; ++c) parts.push_back(class_cert(idx));
        }
        CertPtr<F> host = parts.size() == 1 ? parts[0] : cert_sum(ctx_.alg(), parts);
        if (rep_equal(*host->module, *m)) return host;
        return summand_wrap(m, host);
    }

    // wraps m as an explicit summand of a power of host->module
    CertPtr<F> summand_wrap(const RepPtr<F>& m, const CertPtr<F>& host) {
        auto w = summand_witness(m, host->module);
        if (!w) throw std::logic_error("summand_wrap: not a summand");
        auto& [power, iota, pi] = *w;
        int copies = host->module->total() == 0
                         ? 0
                         : power->total() / host->module->total();
        CertPtr<F> power_cert;
        if (copies <= 0) power_cert = cert_zero(power);
        else if (copies == 1) power_cert = host;
        else power_cert = cert_sum(ctx_.alg(), std::vector<CertPtr<F>>(size_t(copies), host));
        if (!rep_equal(*power_cert->module, *power))
            throw std::logic_error("summand_wrap: power misassembled");
        return cert_summand(m, iota, pi, power_cert);
    }
};

// ---------------------------------------------------------------------------
// Idempotent truncation: restriction to a sub-quiver's vertex set, an exact
// functor when the corner algebra is the sub-quiver algebra (verified by a
// dimension count of the path classes with both ends inside).

template <Field F>
class Truncation {
  public:
    // keep[i] = vertex index in the source algebra for vertex i of the target
    Truncation(AlgPtr<F> src, AlgPtr<F> tgt, std::vector<int> keep)
        : src_(std::move(src)), tgt_(std::move(tgt)), keep_(std::move(keep)) {
        const Quiver& qs = src_->quiver();
        const Quiver& qt = tgt_->quiver();
        if (int(keep_.size()) != qt.nv())
            throw std::invalid_argument("truncation: vertex map size mismatch");
        // arrows of the target must match the induced arrows, by id
        arrow_map_.clear();
        for (int a = 0; a < qt.na(); ++a) {
            const Arrow& at = qt.arrows[size_t(a)];
            int sa = qs.arrow(at.id);
            if (keep_[size_t(at.src)] != qs.arrows[size_t(sa)].src ||
                keep_[size_t(at.tgt)] != qs.arrows[size_t(sa)].tgt)
                throw std::invalid_argument("truncation: arrow endpoints mismatch");
            arrow_map_.push_back(sa);
        }
        // corner dimension check: classes of paths with both ends kept
        std::set<int> kept(keep_.begin(), keep_.end());
        int corner = 0;
        for (int b = 0; b < src_->dim(); ++b) {
            const Path& p = src_->basis_path(b);
            if (kept.count(p.source) && kept.count(p.target(qs))) ++corner;
        }
        if (corner != tgt_->dim())
            throw std::invalid_argument(
                "truncation: corner algebra does not match the sub-quiver algebra");
    }

    RepPtr<F> rep(const RepPtr<F>& m) const {
        const Quiver& qt = tgt_->quiver();
        std::vector<int> dim;
        for (int v = 0; v < qt.nv(); ++v) dim.push_back(m->dim[size_t(keep_[size_t(v)])]);
        std::vector<Mat<F>> mat;
        for (int a = 0; a < qt.na(); ++a) mat.push_back(m->mat[size_t(arrow_map_[size_t(a)])]);
        return checked(make_rep(tgt_, std::move(dim), std::move(mat)));
    }

    Map<F> map(const Map<F>& f, const RepPtr<F>& new_src, const RepPtr<F>& new_tgt) const {
        Map<F> g{new_src, new_tgt, {}};
        for (size_t v = 0; v < keep_.size(); ++v)
            g.block.push_back(f.block[size_t(keep_[v])]);
        return g;
    }

    CertPtr<F> cert(const CertPtr<F>& c) const {
        auto m = rep(c->module);
        switch (c->kind) {
            case Cert<F>::Kind::Zero:
                return cert_at_depth(cert_zero(m), c->depth);
            case Cert<F>::Kind::AddLeaf:
                return cert_at_depth(cert_leaf(m), c->depth);
            case Cert<F>::Kind::Ext: {
                auto cu = cert(c->child_u);
                auto cv = cert(c->child_v);
                SES<F> s{map(c->ses->f, cu->module, m), map(c->ses->g, m, cv->module)};
                return cert_at_depth(cert_ext(checked_ses(s, "truncated sequence"), cu, cv),
                                     c->depth);
            }
            case Cert<F>::Kind::Summand: {
                auto host = cert(c->child);
                return cert_at_depth(
                    cert_summand(m, map(*c->iota, m, host->module), map(*c->pi, host->module, m),
                                 host),
                    c->depth);
            }
            case Cert<F>::Kind::Sum: {
                std::vector<CertPtr<F>> parts;
                for (auto& p : c->parts) parts.push_back(cert(p));
                auto sc = cert_sum(tgt_, parts);
                if (!rep_equal(*sc->module, *m))
                    throw std::logic_error("truncation: sum misassembled");
                return cert_at_depth(sc, c->depth);
            }
        }
        throw std::logic_error("truncation: unknown node");
    }

    GenSet<F> gens(const GenSet<F>& g) const {
        GenSet<F> out;
        for (auto& r : g) out.push_back(rep(r));
        return out;
    }

  private:
    AlgPtr<F> src_, tgt_;
    std::vector<int> keep_;
    std::vector<int> arrow_map_;
};

}  // namespace extdim
