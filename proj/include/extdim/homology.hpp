#pragma once

// Minimal projective covers and injective envelopes, syzygy and cosyzygy
// functors, projective/global dimension, Ext^1 with explicit extension
// middle terms, and the two exact-sequence rotations
//
//   0 -> W1(X3) -> X1 (+) P -> X2 -> 0,   P  a projective cover of X3,
//   0 -> X2 -> E (+) X3 -> W-1(X1) -> 0,  E  an injective envelope of X1.
//
// Everything minimal is memoized per session so that iterated syzygies are
// the same objects on the nose across constructions.

#include "extdim/addcat.hpp"

#include <functional>
#include <map>

namespace extdim {

template <Field F>
struct SES {
    Map<F> f;  // mono
    Map<F> g;  // epi, source(g) = target(f)

    const RepPtr<F>& left() const { return f.src; }
    const RepPtr<F>& middle() const { return f.tgt; }
    const RepPtr<F>& right() const { return g.tgt; }

    bool ok() const { return exact_sequence_ok(f, g); }
};

template <Field F>
SES<F> checked_ses(SES<F> s, const char* where) {
    if (!s.ok()) throw std::logic_error(std::string("inexact sequence from ") + where);
    return s;
}

// split sequence 0 -> A -> A (+) B -> B -> 0
template <Field F>
SES<F> split_ses(const AlgPtr<F>& alg, const RepPtr<F>& a, const RepPtr<F>& b) {
    auto s = direct_sum(alg, {a, b});
    return SES<F>{s.inj[0], s.proj[1]};
}

template <Field F>
struct Resolution {
    RepPtr<F> target;
    std::vector<RepPtr<F>> terms;  // M_0 .. M_n
    std::vector<Map<F>> maps;      // d_0 : M_0 -> X, d_i : M_i -> M_{i-1}
    bool minimal = false;
};

template <Field F>
bool resolution_ok(const Resolution<F>& r) {
    if (r.terms.empty() || r.maps.size() != r.terms.size()) return false;
    if (!is_epi(r.maps[0]) || !intertwines(r.maps[0])) return false;
    for (size_t i = 1; i < r.maps.size(); ++i) {
        const Map<F>& d = r.maps[i];
        const Map<F>& prev = r.maps[i - 1];
        if (!intertwines(d)) return false;
        for (size_t v = 0; v < d.block.size(); ++v) {
            if (!(prev.block[v] * d.block[v]).is_zero()) return false;
            // exactness at terms[i-1]: rank d + rank prev = dim terms[i-1]
            if (rank(d.block[v]) + rank(prev.block[v]) != r.terms[i - 1]->dim[v]) return false;
        }
    }
    // left end: d_n mono
    return is_mono(r.maps.back()) || r.terms.back()->is_zero();
}

struct PdResult {
    enum class Kind { Exact, AtLeast, Infinite };
    enum class Witness { None, Periodic, SelfInjective };
    Kind kind = Kind::Exact;
    int value = -1;        // Exact: the dimension; AtLeast: the cutoff reached
    Witness witness = Witness::None;
    int wi = 0, wj = 0;    // periodicity indices when witness == Periodic

    static PdResult exact(int n) { return {Kind::Exact, n, Witness::None, 0, 0}; }
    static PdResult at_least(int c) { return {Kind::AtLeast, c, Witness::None, 0, 0}; }
    static PdResult infinite_periodic(int i, int j) {
        return {Kind::Infinite, -1, Witness::Periodic, i, j};
    }
    static PdResult infinite_selfinj() {
        return {Kind::Infinite, -1, Witness::SelfInjective, 0, 0};
    }

    bool is_finite() const { return kind == Kind::Exact; }

    std::string str() const {
        switch (kind) {
            case Kind::Exact: return std::to_string(value);
            case Kind::AtLeast: return ">=" + std::to_string(value);
            default:
                return witness == Witness::Periodic
                           ? "infinite (syzygy periodicity W^" + std::to_string(wi) +
                                 " ~ W^" + std::to_string(wj) + ")"
                           : "infinite (self-injective algebra, module not projective)";
        }
    }
};

// Solve g . lam = c for lam : P -> X2 with g : X2 ->> X3 an epi and P
// projective (a solution always exists then; throws if the system has none).
template <Field F>
Map<F> factor_through_epi(const Map<F>& c, const Map<F>& g) {
    auto basis = hom_space(c.src, g.src);
    int width = 0;
    for (size_t v = 0; v < c.block.size(); ++v)
        width += c.tgt->dim[v] * c.src->dim[v];
    Mat<F> sys(width, int(basis.size()));
    for (size_t b = 0; b < basis.size(); ++b) {
        auto v = flatten_endo(compose(g, basis[b]));
        for (int i = 0; i < width; ++i) sys(i, int(b)) = v[size_t(i)];
    }
    auto cv = flatten_endo(c);
    Mat<F> rhs(width, 1);
    for (int i = 0; i < width; ++i) rhs(i, 0) = cv[size_t(i)];
    auto sol = solve(sys, rhs);
    if (!sol) throw std::logic_error("factor_through_epi: no factorization");
    Map<F> lam = zero_map(c.src, g.src);
    for (size_t b = 0; b < basis.size(); ++b)
        lam = map_add(lam, map_scaled(basis[b], (*sol)(int(b), 0)));
    return lam;
}

// Solve phi . f = psi for phi : X2 -> E with f : X1 -> X2 mono and E
// injective (a solution always exists then).
template <Field F>
Map<F> extend_over_mono(const Map<F>& psi, const Map<F>& f) {
    auto basis = hom_space(f.tgt, psi.tgt);
    int width = 0;
    for (size_t v = 0; v < psi.block.size(); ++v)
        width += psi.tgt->dim[v] * psi.src->dim[v];
    Mat<F> sys(width, int(basis.size()));
    for (size_t b = 0; b < basis.size(); ++b) {
        auto v = flatten_endo(compose(basis[b], f));
        for (int i = 0; i < width; ++i) sys(i, int(b)) = v[size_t(i)];
    }
    auto pv = flatten_endo(psi);
    Mat<F> rhs(width, 1);
    for (int i = 0; i < width; ++i) rhs(i, 0) = pv[size_t(i)];
    auto sol = solve(sys, rhs);
    if (!sol) throw std::logic_error("extend_over_mono: no extension");
    Map<F> phi = zero_map(f.tgt, psi.tgt);
    for (size_t b = 0; b < basis.size(); ++b)
        phi = map_add(phi, map_scaled(basis[b], (*sol)(int(b), 0)));
    return phi;
}

// ---------------------------------------------------------------------------

template <Field F>
class HomCtx {
  public:
    struct SyzygyStep {
        RepPtr<F> omega;  // ker of the minimal cover
        Map<F> incl;      // omega -> P
        Map<F> epi;       // P ->> M, minimal
    };
    struct CosyzygyStep {
        RepPtr<F> omega;  // coker of the minimal envelope
        Map<F> mono;      // M -> E, minimal
        Map<F> proj;      // E ->> omega
    };

    explicit HomCtx(AlgPtr<F> alg) : alg_(std::move(alg)) {}

    const AlgPtr<F>& alg() const { return alg_; }

    RepPtr<F> simple_at(int v) { return memo1(simples_, v, [&] { return simple(alg_, v); }); }
    RepPtr<F> proj_at(int v) { return memo1(projs_, v, [&] { return projective(alg_, v); }); }
    RepPtr<F> inj_at(int v) { return memo1(injs_, v, [&] { return injective(alg_, v); }); }

    GenSet<F> projective_gens() {
        GenSet<F> g;
        for (int v = 0; v < alg_->quiver().nv(); ++v) g.push_back(proj_at(v));
        return g;
    }
    GenSet<F> injective_gens() {
        GenSet<F> g;
        for (int v = 0; v < alg_->quiver().nv(); ++v) g.push_back(inj_at(v));
        return g;
    }

    RepPtr<F> regular() {
        if (!regular_) regular_ = regular_module(alg_).sum;
        return regular_;
    }
    RepPtr<F> semisimple_top() {  // Lambda / rad Lambda
        std::vector<RepPtr<F>> s;
        for (int v = 0; v < alg_->quiver().nv(); ++v) s.push_back(simple_at(v));
        return direct_sum(alg_, s).sum;
    }

    // minimal projective cover, built on lifted top representatives
    const SyzygyStep& syzygy_step(const RepPtr<F>& m) {
        auto it = syz_.find(m.get());
        if (it != syz_.end()) return it->second;

        const Quiver& q = alg_->quiver();
        auto rad = radical(m);
        // per-vertex coset representatives of the top
        std::vector<RepPtr<F>> cover_parts;
        std::vector<Mat<F>> gen_vec;  // generator vectors in M, aligned with parts
        std::vector<int> gen_vtx;
        for (int v = 0; v < q.nv(); ++v) {
            Span<F> sp(m->dim[size_t(v)]);
            const Mat<F>& b = rad.incl.block[size_t(v)];
            for (int j = 0; j < b.cols(); ++j) {
                std::vector<F> col(size_t(b.rows()));
                for (int i = 0; i < b.rows(); ++i) col[size_t(i)] = b(i, j);
                sp.insert(std::move(col));
            }
            for (int coord : sp.cobasis()) {
                Mat<F> x(m->dim[size_t(v)], 1);
                x(coord, 0) = F(1);
                cover_parts.push_back(proj_at(v));
                gen_vec.push_back(std::move(x));
                gen_vtx.push_back(v);
            }
        }
        auto sum = direct_sum(alg_, cover_parts);
        Map<F> epi = zero_map(sum.sum, m);
        for (size_t k = 0; k < cover_parts.size(); ++k) {
            // P(v) -> M : basis path p (v -> j) maps to x . p
            int v = gen_vtx[k];
            Map<F> piece = zero_map(cover_parts[k], m);
            std::vector<std::vector<int>> slots(size_t(q.nv()));
            for (int bidx = 0; bidx < alg_->dim(); ++bidx) {
                const Path& p = alg_->basis_path(bidx);
                if (p.source == v) slots[size_t(p.target(q))].push_back(bidx);
            }
            for (int j = 0; j < q.nv(); ++j) {
                Mat<F> blk(m->dim[size_t(j)], int(slots[size_t(j)].size()));
                for (size_t c = 0; c < slots[size_t(j)].size(); ++c) {
                    Mat<F> img = path_matrix(*m, alg_->basis_path(slots[size_t(j)][c])) * gen_vec[k];
                    for (int r = 0; r < m->dim[size_t(j)]; ++r) blk(r, int(c)) = img(r, 0);
                }
                piece.block[size_t(j)] = std::move(blk);
            }
            epi = map_add(epi, compose(piece, sum.proj[k]));
        }
        if (!intertwines(epi) || !is_epi(epi))
            throw std::logic_error("projective cover construction failed");
        auto ker = kernel_of(epi);
        // minimality: kernel inside rad P
        auto radp = radical(epi.src);
        for (size_t v = 0; v < ker.incl.block.size(); ++v)
            if (!solve(radp.incl.block[v], ker.incl.block[v]))
                throw std::logic_error("cover not minimal: kernel escapes rad P");
        SyzygyStep step{ker.rep(), ker.incl, epi};
        return syz_.emplace(m.get(), KeepAlive<SyzygyStep>{m, std::move(step)}).first->second;
    }

    const CosyzygyStep& cosyzygy_step(const RepPtr<F>& m) {
        auto it = cosyz_.find(m.get());
        if (it != cosyz_.end()) return it->second;
        auto op = alg_->opposite();
        if (!op_ctx_) op_ctx_ = std::make_shared<HomCtx>(op);
        auto dm = dualize(m, op);
        const SyzygyStep& opstep = op_ctx_->syzygy_step(dm);
        // dual of P ->> DM is M = DDM -> DP, the minimal envelope
        auto e = dualize(opstep.epi.src, alg_);
        Map<F> mono = dualize_map(opstep.epi, m, e);
        if (!intertwines(mono) || !is_mono(mono))
            throw std::logic_error("injective envelope construction failed");
        auto cok = cokernel_of(mono);
        // minimality: image contains the socle of E
        auto soc = socle(e);
        for (size_t v = 0; v < soc.incl.block.size(); ++v)
            if (!solve(mono.block[v], soc.incl.block[v]))
                throw std::logic_error("envelope not minimal: socle not covered");
        CosyzygyStep step{cok.rep(), mono, cok.proj};
        return cosyz_.emplace(m.get(), KeepAlive<CosyzygyStep>{m, std::move(step)}).first->second;
    }

    RepPtr<F> syzygy(const RepPtr<F>& m, int k) {
        if (k == 0) return m;
        RepPtr<F> cur = m;
        if (k > 0)
            for (int i = 0; i < k; ++i) cur = syzygy_step(cur).omega;
        else
            for (int i = 0; i < -k; ++i) cur = cosyzygy_step(cur).omega;
        return cur;
    }

    bool is_projective(const RepPtr<F>& m) { return syzygy_step(m).omega->is_zero(); }
    bool is_injective_mod(const RepPtr<F>& m) { return cosyzygy_step(m).omega->is_zero(); }

    bool self_injective() {
        if (!selfinj_) {
            bool ok = true;
            auto injs = injective_gens();
            for (int v = 0; v < alg_->quiver().nv() && ok; ++v)
                ok = is_in_add(proj_at(v), injs);
            selfinj_ = ok;
        }
        return *selfinj_;
    }

    int default_cutoff() const { return 4 * alg_->dim(); }

    PdResult proj_dimension(const RepPtr<F>& m, int cutoff = -1) {
        if (cutoff < 0) cutoff = default_cutoff();
        if (m->is_zero()) return PdResult::exact(-1);
        if (is_projective(m)) return PdResult::exact(0);
        if (self_injective()) return PdResult::infinite_selfinj();
        std::vector<RepPtr<F>> chain{m};  // chain[k] = W^k
        RepPtr<F> cur = m;
        for (int k = 1; k <= cutoff; ++k) {
            cur = syzygy_step(cur).omega;
            if (cur->is_zero()) return PdResult::exact(k - 1);
            for (size_t i = 1; i < chain.size(); ++i)
                if (is_iso(chain[i], cur)) return PdResult::infinite_periodic(int(i), k);
            chain.push_back(cur);
        }
        return PdResult::at_least(cutoff);
    }

    PdResult global_dimension(int cutoff = -1) {
        int best = -1;
        bool atleast = false;
        int atleast_val = 0;
        for (int v = 0; v < alg_->quiver().nv(); ++v) {
            PdResult r = proj_dimension(simple_at(v), cutoff);
            if (r.kind == PdResult::Kind::Infinite) return r;
            if (r.kind == PdResult::Kind::AtLeast) {
                atleast = true;
                atleast_val = std::max(atleast_val, r.value);
            } else {
                best = std::max(best, r.value);
            }
        }
        if (atleast) return PdResult::at_least(std::max(atleast_val, best));
        return PdResult::exact(best);
    }

    // minimal projective resolution, truncated at max_len terms (throws if the
    // module has larger finite... the caller bounds; the tail kernel is
    // reported via the last map)
    Resolution<F> minimal_resolution(const RepPtr<F>& m, int max_len) {
        Resolution<F> r;
        r.target = m;
        r.minimal = true;
        const SyzygyStep* step = &syzygy_step(m);
        r.terms.push_back(step->epi.src);
        r.maps.push_back(step->epi);
        RepPtr<F> om = step->omega;
        int k = 0;
        while (!om->is_zero() && k < max_len) {
            const SyzygyStep& next = syzygy_step(om);
            r.terms.push_back(next.epi.src);
            // d : P_{i} -> P_{i-1} is incl . cover
            r.maps.push_back(compose(step->incl, next.epi));
            step = &next;
            om = next.omega;
            ++k;
        }
        if (!om->is_zero())
            throw std::logic_error("minimal_resolution: module exceeds the requested length");
        return r;
    }

    // truncated resolution head 0 -> W^{len}(M) -> P_{len-1} -> ... -> P_0 -> M -> 0
    // returned as the list of covers; tail via syzygy(m, len)
    std::vector<const SyzygyStep*> resolution_head(const RepPtr<F>& m, int len) {
        std::vector<const SyzygyStep*> steps;
        RepPtr<F> cur = m;
        for (int i = 0; i < len; ++i) {
            steps.push_back(&syzygy_step(cur));
            cur = steps.back()->omega;
        }
        return steps;
    }

    // --- Ext^1 ---

    struct Ext1 {
        int dimension = 0;
        RepPtr<F> m, n;
        std::vector<Map<F>> cocycles;  // maps W^1(M) -> N spanning Ext^1
    };

    Ext1 ext1(const RepPtr<F>& m, const RepPtr<F>& n) {
        if (m->alg != n->alg) throw RepError("ext1: modules over different algebras");
        Ext1 out;
        out.m = m;
        out.n = n;
        if (m->is_zero() || n->is_zero()) return out;
        const SyzygyStep& st = syzygy_step(m);
        auto hom_om = hom_space(st.omega, n);
        if (hom_om.empty()) return out;
        auto hom_p = hom_space(st.epi.src, n);
        int width = 0;
        for (size_t v = 0; v < st.omega->dim.size(); ++v)
            width += n->dim[v] * st.omega->dim[v];
        Span<F> restricted(width);
        for (const auto& f : hom_p) restricted.insert(flatten_endo(compose(f, st.incl)));
        for (const auto& f : hom_om)
            if (restricted.insert(flatten_endo(f))) out.cocycles.push_back(f);
        out.dimension = int(out.cocycles.size());
        return out;
    }

    // pushout of 0 -> W^1 M -> P -> M -> 0 along z : W^1 M -> N
    SES<F> extension_from_cocycle(const RepPtr<F>& m, const RepPtr<F>& n, const Map<F>& z) {
        const SyzygyStep& st = syzygy_step(m);
        auto sum = direct_sum(alg_, {n, st.epi.src});
        // phi = (z, -incl) : W^1 M -> N (+) P
        Map<F> phi = map_sub(compose(sum.inj[0], z), compose(sum.inj[1], st.incl));
        auto cok = cokernel_of(phi);
        Map<F> iota = compose(cok.proj, sum.inj[0]);  // N -> A
        // A -> M descending (n, p) -> epi(p)
        Map<F> h = compose(st.epi, sum.proj[1]);
        Map<F> g = descend_map(h, cok.proj, pseudo_identity_proj(m));
        return checked_ses(SES<F>{iota, g}, "extension_from_cocycle");
    }

    // --- exact sequence rotations ---

    // 0 -> W^1(X3) -> X1 (+) P -> X2 -> 0
    SES<F> rotate_left(const SES<F>& s) {
        const SyzygyStep& st = syzygy_step(s.right());
        auto sum = direct_sum(alg_, {s.left(), st.epi.src});
        Map<F> lam = factor_through_epi(st.epi, s.g);
        Map<F> w = map_add(compose(s.f, sum.proj[0]), compose(lam, sum.proj[1]));
        Map<F> mu = restrict_map(compose(lam, st.incl), identity_map(st.omega), s.f);
        Map<F> kp = map_sub(compose(sum.inj[1], st.incl), compose(sum.inj[0], mu));
        return checked_ses(SES<F>{kp, w}, "rotate_left");
    }

    // 0 -> X2 -> E (+) X3 -> W^{-1}(X1) -> 0
    SES<F> rotate_right(const SES<F>& s) {
        const CosyzygyStep& st = cosyzygy_step(s.left());
        auto sum = direct_sum(alg_, {st.mono.tgt, s.right()});
        Map<F> phi = extend_over_mono(st.mono, s.f);
        Map<F> h = map_add(compose(sum.inj[0], phi), compose(sum.inj[1], s.g));
        // q : E (+) X3 -> W^{-1}(X1), with the X3 leg corrected through a
        // vertexwise section of g
        Map<F> q = zero_map(sum.sum, st.omega);
        for (size_t v = 0; v < q.block.size(); ++v) {
            const Mat<F>& gb = s.g.block[v];
            auto sect = solve(gb, Mat<F>::identity(gb.rows()));
            if (!sect) throw std::logic_error("rotate_right: epi has no vertexwise section");
            Mat<F> corr = st.proj.block[v] * (phi.block[v] * *sect);
            // columns: E part then X3 part
            Mat<F> blk(st.omega->dim[v], sum.sum->dim[v]);
            int ecols = st.mono.tgt->dim[v];
            for (int r = 0; r < blk.rows(); ++r) {
                for (int c = 0; c < ecols; ++c) blk(r, c) = st.proj.block[v](r, c);
                for (int c = 0; c < gb.rows(); ++c) blk(r, ecols + c) = -corr(r, c);
            }
            q.block[v] = std::move(blk);
        }
        if (!intertwines(q)) throw std::logic_error("rotate_right: correction is not a module map");
        return checked_ses(SES<F>{h, q}, "rotate_right");
    }

  private:
    AlgPtr<F> alg_;
    std::map<int, RepPtr<F>> simples_, projs_, injs_;
    RepPtr<F> regular_;
    std::optional<bool> selfinj_;
    std::shared_ptr<HomCtx> op_ctx_;

    template <class T>
    struct KeepAlive : T {
        RepPtr<F> key;
        KeepAlive(RepPtr<F> k, T v) : T(std::move(v)), key(std::move(k)) {}
    };
    std::map<const Rep<F>*, KeepAlive<SyzygyStep>> syz_;
    std::map<const Rep<F>*, KeepAlive<CosyzygyStep>> cosyz_;

    template <class MapT, class Fn>
    RepPtr<F> memo1(MapT& memo, int v, Fn&& fn) {
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;
        return memo.emplace(v, fn()).first->second;
    }

    // identity viewed as a projection (for descend_map targets)
    Map<F> pseudo_identity_proj(const RepPtr<F>& m) { return identity_map(m); }
};

}  // namespace extdim
