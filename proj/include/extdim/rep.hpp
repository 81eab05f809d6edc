#pragma once

// Finite-dimensional right modules as quiver representations, module maps,
// and the abelian-category plumbing: kernels, cokernels, images, radicals,
// tops, socles, hom spaces, direct sums.
//
// A representation assigns to each vertex i an exact column space of
// dimension dim[i] and to each arrow a: i -> j a (dim[j] x dim[i]) matrix;
// the right action of a path applies its arrow matrices left to right.

#include "extdim/algebra.hpp"

#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace extdim {

struct RepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <Field F>
struct Rep {
    AlgPtr<F> alg;
    std::vector<int> dim;       // per vertex
    std::vector<Mat<F>> mat;    // per arrow: dim[tgt] x dim[src]

    int total() const { return std::accumulate(dim.begin(), dim.end(), 0); }
    bool is_zero() const { return total() == 0; }

    const Mat<F>& arrow(int a) const { return mat[size_t(a)]; }
};

template <Field F>
using RepPtr = std::shared_ptr<const Rep<F>>;

template <Field F>
RepPtr<F> make_rep(AlgPtr<F> alg, std::vector<int> dim, std::vector<Mat<F>> mat) {
    auto r = std::make_shared<Rep<F>>();
    // bind literal-born scalars to the coefficient field up front, so that
    // downstream row reduction sees normalized entries only
    const FieldSpec& fs = alg->field();
    for (auto& m : mat)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m(i, j) = m(i, j).bound_to(fs);
    r->alg = std::move(alg);
    r->dim = std::move(dim);
    r->mat = std::move(mat);
    return r;
}

template <Field F>
RepPtr<F> zero_rep(const AlgPtr<F>& alg) {
    const Quiver& q = alg->quiver();
    std::vector<int> dim(size_t(q.nv()), 0);
    std::vector<Mat<F>> mat;
    for (const auto& a : q.arrows) mat.emplace_back(0, 0), (void)a;
    return make_rep(alg, std::move(dim), std::move(mat));
}

template <Field F>
Mat<F> path_matrix(const Rep<F>& m, const Path& p) {
    const Quiver& q = m.alg->quiver();
    Mat<F> acc = Mat<F>::identity(m.dim[size_t(p.source)]);
    for (int a : p.arrows) acc = m.mat[size_t(a)] * acc;
    (void)q;
    return acc;
}

// Every relation of the algebra must act as zero; asserted at construction
// of anything user-facing.
template <Field F>
bool relations_vanish(const Rep<F>& m) {
    for (const auto& r : m.alg->relations()) {
        Mat<F> acc(m.dim[size_t(r.tgt)], m.dim[size_t(r.src)]);
        for (auto& [c, p] : r.terms) acc = acc + path_matrix(m, p).scaled(c);
        if (!acc.is_zero()) return false;
    }
    return true;
}

template <Field F>
RepPtr<F> checked(RepPtr<F> r) {
    if (!relations_vanish(*r)) throw RepError("representation violates a relation");
    return r;
}

template <Field F>
bool same_algebra(const Rep<F>& a, const Rep<F>& b) {
    return a.alg == b.alg;
}

template <Field F>
bool rep_equal(const Rep<F>& a, const Rep<F>& b) {
    if (a.alg != b.alg || a.dim != b.dim) return false;
    for (size_t i = 0; i < a.mat.size(); ++i)
        if (!(a.mat[i] == b.mat[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Module maps

template <Field F>
struct Map {
    RepPtr<F> src, tgt;
    std::vector<Mat<F>> block;  // per vertex: tgt.dim[v] x src.dim[v]

    const Mat<F>& at(int v) const { return block[size_t(v)]; }

    bool is_zero() const {
        for (const auto& b : block)
            if (!b.is_zero()) return false;
        return true;
    }
};

template <Field F>
bool intertwines(const Map<F>& f) {
    const Quiver& q = f.src->alg->quiver();
    for (int a = 0; a < q.na(); ++a) {
        int i = q.arrows[size_t(a)].src, j = q.arrows[size_t(a)].tgt;
        Mat<F> lhs = f.block[size_t(j)] * f.src->mat[size_t(a)];
        Mat<F> rhs = f.tgt->mat[size_t(a)] * f.block[size_t(i)];
        if (!(lhs == rhs)) return false;
    }
    return true;
}

template <Field F>
Map<F> checked_map(Map<F> f) {
    if (!intertwines(f)) throw RepError("map does not intertwine the arrow actions");
    return f;
}

template <Field F>
Map<F> zero_map(RepPtr<F> src, RepPtr<F> tgt) {
    Map<F> f{src, tgt, {}};
    for (size_t v = 0; v < src->dim.size(); ++v)
        f.block.emplace_back(tgt->dim[v], src->dim[v]);
    return f;
}

template <Field F>
Map<F> identity_map(RepPtr<F> m) {
    Map<F> f{m, m, {}};
    for (size_t v = 0; v < m->dim.size(); ++v)
        f.block.push_back(Mat<F>::identity(m->dim[v]));
    return f;
}

template <Field F>
Map<F> compose(const Map<F>& g, const Map<F>& f) {  // g after f
    if (g.src != f.tgt && !rep_equal(*g.src, *f.tgt))
        throw RepError("compose: maps not composable");
    Map<F> h{f.src, g.tgt, {}};
    for (size_t v = 0; v < f.block.size(); ++v) h.block.push_back(g.block[v] * f.block[v]);
    return h;
}

template <Field F>
Map<F> map_add(const Map<F>& f, const Map<F>& g) {
    Map<F> h{f.src, f.tgt, {}};
    for (size_t v = 0; v < f.block.size(); ++v) h.block.push_back(f.block[v] + g.block[v]);
    return h;
}

template <Field F>
Map<F> map_sub(const Map<F>& f, const Map<F>& g) {
    Map<F> h{f.src, f.tgt, {}};
    for (size_t v = 0; v < f.block.size(); ++v) h.block.push_back(f.block[v] - g.block[v]);
    return h;
}

template <Field F>
Map<F> map_scaled(const Map<F>& f, const F& c) {
    Map<F> h{f.src, f.tgt, {}};
    for (const auto& b : f.block) h.block.push_back(b.scaled(c));
    return h;
}

template <Field F>
bool map_equal(const Map<F>& f, const Map<F>& g) {
    for (size_t v = 0; v < f.block.size(); ++v)
        if (!(f.block[v] == g.block[v])) return false;
    return true;
}

template <Field F>
bool is_identity(const Map<F>& f) {
    if (f.src->dim != f.tgt->dim) return false;
    for (size_t v = 0; v < f.block.size(); ++v)
        if (!(f.block[v] == Mat<F>::identity(f.src->dim[v]))) return false;
    return true;
}

template <Field F>
bool is_mono(const Map<F>& f) {
    for (size_t v = 0; v < f.block.size(); ++v)
        if (rank(f.block[v]) != f.src->dim[v]) return false;
    return true;
}

template <Field F>
bool is_epi(const Map<F>& f) {
    for (size_t v = 0; v < f.block.size(); ++v)
        if (rank(f.block[v]) != f.tgt->dim[v]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Elementary constructions

template <Field F>
RepPtr<F> simple(const AlgPtr<F>& alg, int v) {
    const Quiver& q = alg->quiver();
    if (v < 0 || v >= q.nv()) throw RepError("simple: unknown vertex");
    std::vector<int> dim(size_t(q.nv()), 0);
    dim[size_t(v)] = 1;
    std::vector<Mat<F>> mat;
    for (const auto& a : q.arrows)
        mat.emplace_back(dim[size_t(a.tgt)], dim[size_t(a.src)]);
    return make_rep(alg, std::move(dim), std::move(mat));
}

// P(v) = e_v * Lambda: basis the classes of paths with source v, arrows act
// by path extension.
template <Field F>
RepPtr<F> projective(const AlgPtr<F>& alg, int v) {
    const Quiver& q = alg->quiver();
    if (v < 0 || v >= q.nv()) throw RepError("projective: unknown vertex");
    // per vertex j: algebra basis indices of paths v -> j
    std::vector<std::vector<int>> slots(size_t(q.nv()));
    for (int b = 0; b < alg->dim(); ++b) {
        const Path& p = alg->basis_path(b);
        if (p.source == v) slots[size_t(p.target(q))].push_back(b);
    }
    std::vector<int> dim(size_t(q.nv()), 0);
    for (int j = 0; j < q.nv(); ++j) dim[size_t(j)] = int(slots[size_t(j)].size());

    std::vector<Mat<F>> mat;
    for (int a = 0; a < q.na(); ++a) {
        int i = q.arrows[size_t(a)].src, j = q.arrows[size_t(a)].tgt;
        Mat<F> m(dim[size_t(j)], dim[size_t(i)]);
        int arrow_cls = alg->basis_index(Path{i, {a}});
        for (size_t c = 0; c < slots[size_t(i)].size(); ++c) {
            if (arrow_cls < 0) break;  // arrow died in the quotient (cannot happen, admissible)
            for (auto& [t, coef] : alg->mult(slots[size_t(i)][c], arrow_cls)) {
                // t is a basis path with source v and target j
                const auto& row_slots = slots[size_t(j)];
                for (size_t r = 0; r < row_slots.size(); ++r)
                    if (row_slots[r] == t) m(int(r), int(c)) = coef;
            }
        }
        mat.push_back(std::move(m));
    }
    return checked(make_rep(alg, std::move(dim), std::move(mat)));
}

// Dual representation over the opposite algebra: same dimensions, transposed
// arrow matrices. Applying it twice gives back the original on the nose.
template <Field F>
RepPtr<F> dualize(const RepPtr<F>& m, const AlgPtr<F>& to_alg) {
    std::vector<Mat<F>> mat;
    for (const auto& a : m->mat) mat.push_back(a.transpose());
    return make_rep(to_alg, m->dim, std::move(mat));
}

template <Field F>
Map<F> dualize_map(const Map<F>& f, const RepPtr<F>& dual_tgt, const RepPtr<F>& dual_src) {
    // contravariant: dual of f: M -> N is DN -> DM with transposed blocks
    Map<F> g{dual_tgt, dual_src, {}};
    for (const auto& b : f.block) g.block.push_back(b.transpose());
    return g;
}

// I(v): dual of the opposite-algebra projective at v.
template <Field F>
RepPtr<F> injective(const AlgPtr<F>& alg, int v) {
    auto op = alg->opposite();
    auto pop = projective<F>(op, v);
    return checked(dualize(pop, alg));
}

template <Field F>
struct SumEmbedding {
    RepPtr<F> sum;
    std::vector<Map<F>> inj;   // component -> sum
    std::vector<Map<F>> proj;  // sum -> component
};

template <Field F>
SumEmbedding<F> direct_sum(const AlgPtr<F>& alg, const std::vector<RepPtr<F>>& parts) {
    const Quiver& q = alg->quiver();
    std::vector<int> dim(size_t(q.nv()), 0);
    for (const auto& p : parts)
        for (int v = 0; v < q.nv(); ++v) dim[size_t(v)] += p->dim[size_t(v)];
    std::vector<Mat<F>> mat;
    for (int a = 0; a < q.na(); ++a) {
        int i = q.arrows[size_t(a)].src, j = q.arrows[size_t(a)].tgt;
        Mat<F> m(0, 0);
        bool first = true;
        for (const auto& p : parts) {
            m = first ? p->mat[size_t(a)] : Mat<F>::diag_sum(m, p->mat[size_t(a)]);
            first = false;
        }
        if (parts.empty()) m = Mat<F>(dim[size_t(j)], dim[size_t(i)]);
        mat.push_back(std::move(m));
    }
    SumEmbedding<F> out;
    out.sum = make_rep(alg, dim, std::move(mat));

    std::vector<int> off(size_t(q.nv()), 0);
    for (const auto& p : parts) {
        Map<F> inj{p, out.sum, {}};
        Map<F> prj{out.sum, p, {}};
        for (int v = 0; v < q.nv(); ++v) {
            Mat<F> in(out.sum->dim[size_t(v)], p->dim[size_t(v)]);
            Mat<F> pr(p->dim[size_t(v)], out.sum->dim[size_t(v)]);
            for (int k = 0; k < p->dim[size_t(v)]; ++k) {
                in(off[size_t(v)] + k, k) = F(1);
                pr(k, off[size_t(v)] + k) = F(1);
            }
            inj.block.push_back(std::move(in));
            prj.block.push_back(std::move(pr));
        }
        out.inj.push_back(std::move(inj));
        out.proj.push_back(std::move(prj));
        for (int v = 0; v < q.nv(); ++v) off[size_t(v)] += p->dim[size_t(v)];
    }
    return out;
}

// The regular module as the explicit sum of the P(i), in vertex order.
template <Field F>
SumEmbedding<F> regular_module(const AlgPtr<F>& alg) {
    std::vector<RepPtr<F>> parts;
    for (int v = 0; v < alg->quiver().nv(); ++v) parts.push_back(projective(alg, v));
    return direct_sum(alg, parts);
}

// ---------------------------------------------------------------------------
// Kernels, cokernels, images

// Substitute representation on chosen per-vertex subspaces, with the induced
// arrow action; incl is a vertexwise-injective module map.
template <Field F>
struct Sub {
    Map<F> incl;  // sub -> ambient, full-column-rank blocks
    RepPtr<F> rep() const { return incl.src; }
};

// Builds the subrepresentation spanned per vertex by the columns of basis[v]
// (columns must be arrow-stable as a family).
template <Field F>
Sub<F> sub_from_bases(const RepPtr<F>& m, std::vector<Mat<F>> basis) {
    const Quiver& q = m->alg->quiver();
    std::vector<int> dim(size_t(q.nv()), 0);
    for (int v = 0; v < q.nv(); ++v) dim[size_t(v)] = basis[size_t(v)].cols();
    std::vector<Mat<F>> mat;
    for (int a = 0; a < q.na(); ++a) {
        int i = q.arrows[size_t(a)].src, j = q.arrows[size_t(a)].tgt;
        Mat<F> img = m->mat[size_t(a)] * basis[size_t(i)];
        auto sol = solve(basis[size_t(j)], img);
        if (!sol) throw RepError("sub_from_bases: span is not arrow-stable");
        mat.push_back(*sol);
        (void)dim;
    }
    auto sub = make_rep(m->alg, dim, std::move(mat));
    Map<F> incl{sub, m, std::move(basis)};
    return Sub<F>{std::move(incl)};
}

template <Field F>
Sub<F> kernel_of(const Map<F>& f) {
    std::vector<Mat<F>> basis;
    for (const auto& b : f.block) basis.push_back(kernel(b));
    return sub_from_bases(f.src, std::move(basis));
}

template <Field F>
Sub<F> image_of(const Map<F>& f) {
    std::vector<Mat<F>> basis;
    for (const auto& b : f.block) basis.push_back(image_basis(b));
    return sub_from_bases(f.tgt, std::move(basis));
}

// Quotient of the target of f by its image; returns the projection.
template <Field F>
struct Quot {
    Map<F> proj;  // ambient -> quotient, vertexwise surjective
    RepPtr<F> rep() const { return proj.tgt; }
};

template <Field F>
Quot<F> cokernel_of(const Map<F>& f) {
    const Quiver& q = f.tgt->alg->quiver();
    int nv = q.nv();
    std::vector<Span<F>> spans;
    std::vector<std::vector<int>> cob;
    cob.resize(size_t(nv));
    for (int v = 0; v < nv; ++v) {
        Span<F> s(f.tgt->dim[size_t(v)]);
        const Mat<F>& b = f.block[size_t(v)];
        for (int j = 0; j < b.cols(); ++j) {
            std::vector<F> col(size_t(b.rows()));
            for (int i = 0; i < b.rows(); ++i) col[size_t(i)] = b(i, j);
            s.insert(std::move(col));
        }
        cob[size_t(v)] = s.cobasis();
        spans.push_back(std::move(s));
    }
    std::vector<int> dim(size_t(nv), 0);
    for (int v = 0; v < nv; ++v) dim[size_t(v)] = int(cob[size_t(v)].size());

    // projection blocks: standard vector -> quotient coordinates
    std::vector<Mat<F>> pblock;
    for (int v = 0; v < nv; ++v) {
        int n = f.tgt->dim[size_t(v)];
        Mat<F> p(dim[size_t(v)], n);
        for (int j = 0; j < n; ++j) {
            std::vector<F> e(size_t(n), F(0));
            e[size_t(j)] = F(1);
            auto qc = spans[size_t(v)].quotient_coords(e, cob[size_t(v)]);
            for (int i = 0; i < dim[size_t(v)]; ++i) p(i, j) = qc[size_t(i)];
        }
        pblock.push_back(std::move(p));
    }

    // induced arrow maps: Q_a * p_i = p_j * M_a; columns of p_i span, so the
    // induced matrix is determined on cobasis representatives
    std::vector<Mat<F>> mat;
    for (int a = 0; a < q.na(); ++a) {
        int i = q.arrows[size_t(a)].src, j = q.arrows[size_t(a)].tgt;
        Mat<F> m(dim[size_t(j)], dim[size_t(i)]);
        for (int c = 0; c < dim[size_t(i)]; ++c) {
            int rep_coord = cob[size_t(i)][size_t(c)];
            Mat<F> e(f.tgt->dim[size_t(i)], 1);
            e(rep_coord, 0) = F(1);
            Mat<F> img = pblock[size_t(j)] * (f.tgt->mat[size_t(a)] * e);
            for (int r = 0; r < dim[size_t(j)]; ++r) m(r, c) = img(r, 0);
        }
        mat.push_back(std::move(m));
    }
    auto qrep = make_rep(f.tgt->alg, dim, std::move(mat));
    Map<F> proj{f.tgt, qrep, std::move(pblock)};
    return Quot<F>{std::move(proj)};
}

// g = incl_B^{-1} . f . incl_A where the factorization exists (throws if not).
template <Field F>
Map<F> restrict_map(const Map<F>& f, const Map<F>& incl_a, const Map<F>& incl_b) {
    Map<F> g{incl_a.src, incl_b.src, {}};
    for (size_t v = 0; v < f.block.size(); ++v) {
        auto sol = solve(incl_b.block[v], f.block[v] * incl_a.block[v]);
        if (!sol) throw RepError("restrict_map: image leaves the target submodule");
        g.block.push_back(*sol);
    }
    return g;
}

// g with g . proj_a = proj_b . f (throws if f does not descend).
template <Field F>
Map<F> descend_map(const Map<F>& f, const Map<F>& proj_a, const Map<F>& proj_b) {
    Map<F> g{proj_a.tgt, proj_b.tgt, {}};
    for (size_t v = 0; v < f.block.size(); ++v) {
        // solve X * proj_a = proj_b * f  ==  proj_a^T X^T = (proj_b f)^T
        auto sol = solve(proj_a.block[v].transpose(), (proj_b.block[v] * f.block[v]).transpose());
        if (!sol) throw RepError("descend_map: map does not factor through the quotient");
        g.block.push_back(sol->transpose());
    }
    // consistency: descending is only valid if it commutes exactly
    for (size_t v = 0; v < f.block.size(); ++v)
        if (!(g.block[v] * proj_a.block[v] == proj_b.block[v] * f.block[v]))
            throw RepError("descend_map: inconsistent factorization");
    return g;
}

// ---------------------------------------------------------------------------
// Radical series, top, socle

template <Field F>
Sub<F> radical(const RepPtr<F>& m) {
    const Quiver& q = m->alg->quiver();
    std::vector<Mat<F>> basis;
    for (int v = 0; v < q.nv(); ++v) {
        Mat<F> acc(m->dim[size_t(v)], 0);
        for (int a = 0; a < q.na(); ++a)
            if (q.arrows[size_t(a)].tgt == v) acc = Mat<F>::hstack(acc, m->mat[size_t(a)]);
        basis.push_back(image_basis(acc));
    }
    return sub_from_bases(m, std::move(basis));
}

template <Field F>
Quot<F> top(const RepPtr<F>& m) {
    return cokernel_of(radical(m).incl);
}

template <Field F>
Sub<F> socle(const RepPtr<F>& m) {
    const Quiver& q = m->alg->quiver();
    std::vector<Mat<F>> basis;
    for (int v = 0; v < q.nv(); ++v) {
        Mat<F> acc(0, m->dim[size_t(v)]);
        for (int a = 0; a < q.na(); ++a)
            if (q.arrows[size_t(a)].src == v) acc = Mat<F>::vstack(acc, m->mat[size_t(a)]);
        basis.push_back(kernel(acc));
    }
    return sub_from_bases(m, std::move(basis));
}

// least n >= 0 with rad^n M = 0
template <Field F>
int loewy_length(const RepPtr<F>& m) {
    RepPtr<F> cur = m;
    int n = 0;
    while (!cur->is_zero()) {
        cur = radical(cur).rep();
        ++n;
        if (n > cur->alg->nilpotency() + 1)
            throw RepError("loewy_length: radical series does not terminate");
    }
    return n;
}

// dimension vector of the top, i.e. multiplicity of each simple in M/rad M
template <Field F>
std::vector<int> top_multiplicities(const RepPtr<F>& m) {
    return top(m).rep()->dim;
}

// ---------------------------------------------------------------------------
// Hom spaces

template <Field F>
std::vector<Map<F>> hom_space(const RepPtr<F>& m, const RepPtr<F>& n) {
    if (m->alg != n->alg) throw RepError("hom_space: modules over different algebras");
    const Quiver& q = m->alg->quiver();
    int nv = q.nv();
    std::vector<int> off(size_t(nv) + 1, 0);
    for (int v = 0; v < nv; ++v)
        off[size_t(v) + 1] = off[size_t(v)] + m->dim[size_t(v)] * n->dim[size_t(v)];
    int unknowns = off[size_t(nv)];

    int eqs = 0;
    for (int a = 0; a < q.na(); ++a)
        eqs += n->dim[size_t(q.arrows[size_t(a)].tgt)] * m->dim[size_t(q.arrows[size_t(a)].src)];

    Mat<F> sys(eqs, unknowns);
    int row = 0;
    // f_j M_a - N_a f_i = 0; unknown f_v flattened row-major
    auto idx = [&](int v, int r, int c) { return off[size_t(v)] + r * m->dim[size_t(v)] + c; };
    for (int a = 0; a < q.na(); ++a) {
        int i = q.arrows[size_t(a)].src, j = q.arrows[size_t(a)].tgt;
        const Mat<F>& ma = m->mat[size_t(a)];
        const Mat<F>& na = n->mat[size_t(a)];
        for (int r = 0; r < n->dim[size_t(j)]; ++r)
            for (int c = 0; c < m->dim[size_t(i)]; ++c) {
                for (int k = 0; k < m->dim[size_t(j)]; ++k)
                    if (!ma(k, c).is_zero()) sys(row, idx(j, r, k)) += ma(k, c);
                for (int k = 0; k < n->dim[size_t(i)]; ++k)
                    if (!na(r, k).is_zero()) sys(row, idx(i, k, c)) -= na(r, k);
                ++row;
            }
    }
    Mat<F> ker = kernel(sys);
    std::vector<Map<F>> basis;
    for (int s = 0; s < ker.cols(); ++s) {
        Map<F> f{m, n, {}};
        for (int v = 0; v < nv; ++v) {
            Mat<F> b(n->dim[size_t(v)], m->dim[size_t(v)]);
            for (int r = 0; r < n->dim[size_t(v)]; ++r)
                for (int c = 0; c < m->dim[size_t(v)]; ++c) b(r, c) = ker(idx(v, r, c), s);
            f.block.push_back(std::move(b));
        }
        basis.push_back(std::move(f));
    }
    return basis;
}

// im f = ker g vertexwise; f mono, g epi.
template <Field F>
bool exact_sequence_ok(const Map<F>& f, const Map<F>& g) {
    if (f.tgt != g.src && !rep_equal(*f.tgt, *g.src)) return false;
    if (!is_mono(f) || !is_epi(g)) return false;
    for (size_t v = 0; v < f.block.size(); ++v) {
        if (!(g.block[v] * f.block[v]).is_zero()) return false;
        if (rank(f.block[v]) + rank(g.block[v]) != f.tgt->dim[v]) return false;
    }
    return intertwines(f) && intertwines(g);
}

}  // namespace extdim
