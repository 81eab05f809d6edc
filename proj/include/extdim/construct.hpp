#pragma once

// Constructive certificate machinery.
//
// The engine is a pair of "transports". Taking minimal syzygies of a short
// exact sequence through the Horseshoe Lemma yields a new short exact
// sequence whose ends are the minimal syzygies of the old ends and whose
// middle contains the minimal syzygy of the old middle as an explicit direct
// summand. Dually for cosyzygies. Split pairs (iota, pi) with pi . iota = id
// transport the same way, by lifting both maps through minimal covers or
// envelopes and correcting the composite by an automorphism.
//
// On top of these, a finite exact resolution of X converts into a
// certificate tree placing X in one diamond layer per resolution term; this
// is the constructive content behind the filtration bound machinery.

#include "extdim/certificate.hpp"

namespace extdim {

template <Field F>
struct SplitPair {
    Map<F> iota;  // A -> B
    Map<F> pi;    // B -> A, pi . iota = id_A

    const RepPtr<F>& small() const { return iota.src; }
    const RepPtr<F>& big() const { return iota.tgt; }
};

template <Field F>
SplitPair<F> identity_pair(const RepPtr<F>& m) {
    return {identity_map(m), identity_map(m)};
}

template <Field F>
SplitPair<F> checked_pair(SplitPair<F> p, const char* where) {
    if (!is_identity(compose(p.pi, p.iota)))
        throw std::logic_error(std::string("split pair broken in ") + where);
    return p;
}

// (B | C) after (A | B) gives A | C
template <Field F>
SplitPair<F> compose_pairs(const SplitPair<F>& outer, const SplitPair<F>& inner) {
    return {compose(outer.iota, inner.iota), compose(inner.pi, outer.pi)};
}

template <Field F>
Map<F> invert_iso(const Map<F>& f) {
    Map<F> inv{f.tgt, f.src, {}};
    for (size_t v = 0; v < f.block.size(); ++v) {
        auto sol = solve(f.block[v], Mat<F>::identity(f.block[v].rows()));
        if (!sol || f.block[v].rows() != f.block[v].cols())
            throw std::logic_error("invert_iso: map is not invertible");
        inv.block.push_back(*sol);
    }
    return inv;
}

// canonical block injection/projection of the k-th part of a structural
// direct sum (dims are concatenated in order)
template <Field F>
SplitPair<F> block_summand(const RepPtr<F>& whole, const std::vector<RepPtr<F>>& parts, size_t k) {
    int nv = int(whole->dim.size());
    Map<F> iota{parts[k], whole, {}};
    Map<F> pi{whole, parts[k], {}};
    for (int v = 0; v < nv; ++v) {
        int off = 0;
        for (size_t i = 0; i < k; ++i) off += parts[i]->dim[size_t(v)];
        Mat<F> in(whole->dim[size_t(v)], parts[k]->dim[size_t(v)]);
        Mat<F> pr(parts[k]->dim[size_t(v)], whole->dim[size_t(v)]);
        for (int r = 0; r < parts[k]->dim[size_t(v)]; ++r) {
            in(off + r, r) = F(1);
            pr(r, off + r) = F(1);
        }
        iota.block.push_back(std::move(in));
        pi.block.push_back(std::move(pr));
    }
    return {std::move(iota), std::move(pi)};
}

// ---------------------------------------------------------------------------
// Transports

template <Field F>
class Transport {
  public:
    explicit Transport(HomCtx<F>& ctx) : ctx_(ctx) {}

    HomCtx<F>& ctx() { return ctx_; }

    // A | B  gives  W^1 A | W^1 B  (minimal syzygies, memoized modules)
    SplitPair<F> syzygy_pair(const SplitPair<F>& p) {
        const auto& sa = ctx_.syzygy_step(p.small());
        const auto& sb = ctx_.syzygy_step(p.big());
        Map<F> ih = factor_through_epi(compose(p.iota, sa.epi), sb.epi);
        Map<F> ph = factor_through_epi(compose(p.pi, sb.epi), sa.epi);
        Map<F> rho = compose(ph, ih);  // lifts id, hence invertible by minimality
        ph = compose(invert_iso(rho), ph);
        Map<F> oi = restrict_map(ih, sa.incl, sb.incl);
        Map<F> op = restrict_map(ph, sb.incl, sa.incl);
        return checked_pair(SplitPair<F>{oi, op}, "syzygy_pair");
    }

    // A | B  gives  W^{-1} A | W^{-1} B
    SplitPair<F> cosyzygy_pair(const SplitPair<F>& p) {
        const auto& ca = ctx_.cosyzygy_step(p.small());
        const auto& cb = ctx_.cosyzygy_step(p.big());
        Map<F> ih = extend_over_mono(compose(cb.mono, p.iota), ca.mono);
        Map<F> ph = extend_over_mono(compose(ca.mono, p.pi), cb.mono);
        Map<F> sigma = compose(ph, ih);  // extends id over the minimal envelope
        ph = compose(invert_iso(sigma), ph);
        Map<F> oi = descend_map(ih, ca.proj, cb.proj);
        Map<F> op = descend_map(ph, cb.proj, ca.proj);
        return checked_pair(SplitPair<F>{oi, op}, "cosyzygy_pair");
    }

    // Horseshoe through minimal covers: from 0 -> U -> A -> V -> 0 build
    // 0 -> W^1 U -> H -> W^1 V -> 0 with an explicit W^1 A | H.
    std::pair<SES<F>, SplitPair<F>> horseshoe_syzygy(const SES<F>& s) {
        const auto& su = ctx_.syzygy_step(s.left());
        const auto& sv = ctx_.syzygy_step(s.right());
        auto sum = direct_sum(ctx_.alg(), {su.epi.src, sv.epi.src});
        Map<F> lift = factor_through_epi(sv.epi, s.g);
        Map<F> cpr = map_add(compose(compose(s.f, su.epi), sum.proj[0]),
                             compose(lift, sum.proj[1]));
        if (!is_epi(cpr)) throw std::logic_error("horseshoe_syzygy: combined cover not epi");
        auto ker = kernel_of(cpr);

        Map<F> j = restrict_map(compose(sum.inj[0], su.incl), identity_map(su.omega), ker.incl);
        Map<F> q = restrict_map(compose(sum.proj[1], ker.incl), identity_map(ker.rep()), sv.incl);
        SES<F> out = checked_ses(SES<F>{j, q}, "horseshoe_syzygy");

        const auto& sa = ctx_.syzygy_step(s.middle());
        Map<F> u = factor_through_epi(sa.epi, cpr);
        Map<F> r = factor_through_epi(cpr, sa.epi);
        Map<F> rho = compose(r, u);
        r = compose(invert_iso(rho), r);
        Map<F> oi = restrict_map(compose(u, sa.incl), identity_map(sa.omega), ker.incl);
        Map<F> op = restrict_map(compose(r, ker.incl), identity_map(ker.rep()), sa.incl);
        return {out, checked_pair(SplitPair<F>{oi, op}, "horseshoe_syzygy pair")};
    }

    // Dual Horseshoe through minimal envelopes: from 0 -> U -> A -> V -> 0
    // build 0 -> W^{-1} U -> Q -> W^{-1} V -> 0 with W^{-1} A | Q.
    std::pair<SES<F>, SplitPair<F>> horseshoe_cosyzygy(const SES<F>& s) {
        const auto& cu = ctx_.cosyzygy_step(s.left());
        const auto& cv = ctx_.cosyzygy_step(s.right());
        auto sum = direct_sum(ctx_.alg(), {cu.mono.tgt, cv.mono.tgt});
        Map<F> phi = extend_over_mono(cu.mono, s.f);
        Map<F> h = map_add(compose(sum.inj[0], phi), compose(sum.inj[1], compose(cv.mono, s.g)));
        if (!is_mono(h)) throw std::logic_error("horseshoe_cosyzygy: combined envelope not mono");
        auto cok = cokernel_of(h);

        Map<F> j = descend_map(compose(cok.proj, sum.inj[0]), cu.proj, identity_map(cok.rep()));
        Map<F> q = descend_map(compose(cv.proj, sum.proj[1]), cok.proj, identity_map(cv.omega));
        SES<F> out = checked_ses(SES<F>{j, q}, "horseshoe_cosyzygy");

        const auto& ca = ctx_.cosyzygy_step(s.middle());
        Map<F> u = extend_over_mono(h, ca.mono);
        Map<F> r = extend_over_mono(ca.mono, h);
        Map<F> sigma = compose(r, u);
        r = compose(invert_iso(sigma), r);
        Map<F> oi = descend_map(compose(cok.proj, u), ca.proj, identity_map(cok.rep()));
        Map<F> op = descend_map(r, cok.proj, ca.proj);
        return {out, checked_pair(SplitPair<F>{oi, op}, "horseshoe_cosyzygy pair")};
    }

    // Iterated versions; the pair tracks W^k(middle) | middle_k.
    std::pair<SES<F>, SplitPair<F>> horseshoe_syzygy_iter(const SES<F>& s, int k) {
        SES<F> cur = s;
        SplitPair<F> acc = identity_pair(s.middle());
        for (int i = 0; i < k; ++i) {
            auto [next, pair] = horseshoe_syzygy(cur);
            acc = compose_pairs(pair, syzygy_pair(acc));
            cur = next;
        }
        return {cur, acc};
    }

    std::pair<SES<F>, SplitPair<F>> horseshoe_cosyzygy_iter(const SES<F>& s, int k) {
        SES<F> cur = s;
        SplitPair<F> acc = identity_pair(s.middle());
        for (int i = 0; i < k; ++i) {
            auto [next, pair] = horseshoe_cosyzygy(cur);
            acc = compose_pairs(pair, cosyzygy_pair(acc));
            cur = next;
        }
        return {cur, acc};
    }

    // From 0 -> U -> A -> V -> 0 with W^k(V) = 0 (pd V < k): the k-fold
    // syzygy Horseshoe degenerates into an explicit split pair
    // W^k(A) | W^k(U).
    SplitPair<F> degenerate_syzygy_pair(const SES<F>& s, int k) {
        if (s.right()->is_zero()) {
            // middle is U up to the iso f; transport the iso pair
            SplitPair<F> p{invert_iso(s.f), s.f};
            for (int i = 0; i < k; ++i) p = syzygy_pair(p);
            return p;
        }
        auto [sesk, pair] = horseshoe_syzygy_iter(s, k);
        if (!sesk.right()->is_zero())
            throw std::logic_error("degenerate_syzygy_pair: right end did not vanish");
        // mono W^k U -> H_k is onto: invert it
        Map<F> inv = invert_iso(sesk.f);
        return checked_pair(SplitPair<F>{compose(inv, pair.iota), compose(pair.pi, sesk.f)},
                            "degenerate_syzygy_pair");
    }

    // Mirror image: W^k(U) = 0 (pd U < k) gives W^k(A) | W^k(V).
    SplitPair<F> degenerate_syzygy_pair_left(const SES<F>& s, int k) {
        if (s.left()->is_zero()) {
            SplitPair<F> p{s.g, invert_iso(s.g)};
            for (int i = 0; i < k; ++i) p = syzygy_pair(p);
            return p;
        }
        auto [sesk, pair] = horseshoe_syzygy_iter(s, k);
        if (!sesk.left()->is_zero())
            throw std::logic_error("degenerate_syzygy_pair_left: left end did not vanish");
        // epi H_k -> W^k V has zero kernel: invert it
        Map<F> inv = invert_iso(sesk.g);
        return checked_pair(SplitPair<F>{compose(sesk.g, pair.iota), compose(pair.pi, inv)},
                            "degenerate_syzygy_pair_left");
    }

    // Transport a certificate through the cosyzygy functor: a witness for
    // M in <C_0, ..., C_m>-layers becomes one for W^{-1}(M) with every module
    // replaced by its minimal cosyzygy.
    CertPtr<F> cosyzygy_cert(const CertPtr<F>& c) {
        switch (c->kind) {
            case Cert<F>::Kind::Zero:
                return cert_zero(ctx_.syzygy(c->module, -1));
            case Cert<F>::Kind::AddLeaf: {
                auto leaf = cert_leaf(ctx_.syzygy(c->module, -1));
                return cert_at_depth(leaf, c->depth);
            }
            case Cert<F>::Kind::Summand: {
                SplitPair<F> p = cosyzygy_pair(SplitPair<F>{*c->iota, *c->pi});
                return cert_summand(p.small(), p.iota, p.pi, cosyzygy_cert(c->child));
            }
            case Cert<F>::Kind::Ext: {
                auto [ses2, pair] = horseshoe_cosyzygy(*c->ses);
                CertPtr<F> cu = cosyzygy_cert(c->child_u);
                CertPtr<F> cv = cosyzygy_cert(c->child_v);
                CertPtr<F> ext = cert_ext(ses2, cu, cv);
                return cert_summand(pair.small(), pair.iota, pair.pi, ext);
            }
            case Cert<F>::Kind::Sum:
                // never produced by the resolution machinery
                throw std::logic_error("cosyzygy_cert: sum nodes are not transportable");
        }
        throw std::logic_error("cosyzygy_cert: unknown node");
    }

  private:
    HomCtx<F>& ctx_;

    // g : coker_a -> coker_b with g . proj_a = proj_b . f
    Map<F> descend_with_quotient(const Map<F>& f, const Map<F>& proj_a, const Map<F>& proj_b) {
        return descend_map(f, proj_a, proj_b);
    }
};

// ---------------------------------------------------------------------------
// Exact resolution -> filtration certificate

// Shared recursion: exact  0 -> terms[m] -> ... -> terms[0] -> X -> 0  with
// maps[0] : terms[0] ->> X and maps[i] : terms[i] -> terms[i-1]. The base
// case X' ~ terms[m] (an isomorphism) is delegated, so callers can splice a
// deeper certificate onto the innermost module.
template <Field F>
CertPtr<F> filtration_from_exact(
    Transport<F>& tr, const RepPtr<F>& x, const std::vector<RepPtr<F>>& terms,
    const std::vector<Map<F>>& maps,
    const std::function<CertPtr<F>(const RepPtr<F>&, const Map<F>&)>& base) {
    if (terms.size() != maps.size() || terms.empty())
        throw std::logic_error("filtration_from_exact: malformed resolution");
    if (terms.size() == 1) return base(x, maps[0]);

    auto& ctx = tr.ctx();
    auto img = image_of(maps[1]);  // = ker maps[0], the next target
    Map<F> d1 = restrict_map(maps[1], identity_map(terms[1]), img.incl);
    std::vector<RepPtr<F>> subterms(terms.begin() + 1, terms.end());
    std::vector<Map<F>> submaps;
    submaps.push_back(d1);
    for (size_t i = 2; i < maps.size(); ++i) submaps.push_back(maps[i]);

    CertPtr<F> inner = filtration_from_exact(tr, img.rep(), subterms, submaps, base);
    CertPtr<F> shifted = tr.cosyzygy_cert(inner);

    SES<F> ses{img.incl, maps[0]};
    SES<F> rot = ctx.rotate_right(ses);  // 0 -> terms[0] -> E (+) X -> W^{-1}(img) -> 0
    if (rot.right().get() != shifted->module.get() &&
        !rep_equal(*rot.right(), *shifted->module))
        throw std::logic_error("filtration_from_exact: transport misaligned");

    CertPtr<F> ext = cert_ext(rot, cert_leaf(rot.left()), shifted);
    // X is the second block of the middle E (+) X
    const auto& env = ctx.cosyzygy_step(img.rep());
    SplitPair<F> emb = block_summand(rot.middle(), {env.mono.tgt, x}, 1);
    return cert_summand(x, emb.iota, emb.pi, ext);
}

// The certificate for X given an exact resolution with terms in add(M...):
// X ends up in one diamond layer per term, total depth n+1, with leaves the
// i-fold cosyzygies of the terms.
template <Field F>
CertPtr<F> resolution_to_filtration(HomCtx<F>& ctx, const Resolution<F>& res) {
    if (!resolution_ok(res)) throw std::logic_error("resolution_to_filtration: inexact input");
    Transport<F> tr(ctx);
    std::function<CertPtr<F>(const RepPtr<F>&, const Map<F>&)> base =
        [](const RepPtr<F>& x, const Map<F>&) { return cert_leaf(x); };
    return filtration_from_exact(tr, res.target, res.terms, res.maps, base);
}

// The add-generators whose closure the certificate lands in: the i-fold
// cosyzygies of the resolution terms.
template <Field F>
GenSet<F> resolution_generators(HomCtx<F>& ctx, const Resolution<F>& res) {
    GenSet<F> g;
    for (size_t i = 0; i < res.terms.size(); ++i)
        g.push_back(ctx.syzygy(res.terms[i], -int(i)));
    return g;
}

}  // namespace extdim
