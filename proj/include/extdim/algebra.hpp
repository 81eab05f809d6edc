#pragma once

// Bound quiver algebra kQ/I with an explicit path basis and multiplication
// table, built by bounded-length linear algebra: enumerate paths, span the
// ideal by all two-sided shifts p*r*q of the relations, and take the quotient
// basis by exact row reduction. No Groebner machinery.
//
// Conventions fixed here and used everywhere: paths compose left to right
// (a path i -> j followed by j -> l yields i -> l), and the indecomposable
// projective P(i) = e_i * Lambda has as basis the classes of paths with
// source i.

#include "extdim/field.hpp"
#include "extdim/matrix.hpp"
#include "extdim/quiver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

namespace extdim {

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <Field F>
struct Relation {
    // parallel paths (same source and target), every path of length >= 2
    std::vector<std::pair<F, Path>> terms;
    int src = 0, tgt = 0;
};

template <Field F>
class Algebra {
  public:
    static constexpr int kDefaultLengthCap = 64;
    static constexpr int kPathCountCap = 200000;

    Algebra(FieldSpec fs, Quiver q, std::vector<Relation<F>> rels,
            int length_cap = kDefaultLengthCap)
        : fs_(fs), q_(std::move(q)), rels_(std::move(rels)), order_(q_) {
        if (fs_.kind == FieldSpec::Kind::Prime && !is_prime(fs_.p))
            throw AlgebraError("field modulus " + std::to_string(fs_.p) + " is not prime");
        validate_relations();
        build(length_cap);
    }

    const FieldSpec& field() const { return fs_; }
    const Quiver& quiver() const { return q_; }
    const std::vector<Relation<F>>& relations() const { return rels_; }
    const PathOrder& order() const { return order_; }

    int dim() const { return int(basis_.size()); }
    int nilpotency() const { return nilpotency_; }  // least N with rad^N = 0
    const std::vector<Path>& basis() const { return basis_; }
    const Path& basis_path(int i) const { return basis_[size_t(i)]; }

    int basis_index(const Path& p) const {
        auto it = basis_pos_.find(p);
        return it == basis_pos_.end() ? -1 : it->second;
    }

    int unit_index(int v) const { return unit_idx_[size_t(v)]; }

    // Residue class of an arbitrary path, as a dense coefficient vector.
    std::vector<F> path_class(const Path& p) const {
        std::vector<F> out(basis_.size(), F(0));
        if (p.length() >= nilpotency_) return out;
        auto it = class_of_.find(p);
        if (it == class_of_.end()) return out;
        for (auto& [idx, c] : it->second) out[size_t(idx)] = c;
        return out;
    }

    // Product of two basis classes; cached.
    const std::vector<std::pair<int, F>>& mult(int i, int j) const {
        auto key = std::make_pair(i, j);
        auto it = mult_memo_.find(key);
        if (it != mult_memo_.end()) return it->second;
        const Path& p = basis_[size_t(i)];
        const Path& q = basis_[size_t(j)];
        std::vector<std::pair<int, F>> out;
        if (p.target(q_) == q.source) {
            Path pq = p;
            pq.arrows.insert(pq.arrows.end(), q.arrows.begin(), q.arrows.end());
            auto cls = path_class(pq);
            for (int t = 0; t < dim(); ++t)
                if (!cls[size_t(t)].is_zero()) out.push_back({t, cls[size_t(t)]});
        }
        return mult_memo_.emplace(key, std::move(out)).first->second;
    }

    std::vector<F> multiply(const std::vector<F>& a, const std::vector<F>& b) const {
        if (int(a.size()) != dim() || int(b.size()) != dim())
            throw AlgebraError("multiply: coefficient vector length does not match path basis");
        std::vector<F> out(basis_.size(), F(0));
        for (int i = 0; i < dim(); ++i) {
            if (a[size_t(i)].is_zero()) continue;
            for (int j = 0; j < dim(); ++j) {
                if (b[size_t(j)].is_zero()) continue;
                for (auto& [t, c] : mult(i, j)) out[size_t(t)] += a[size_t(i)] * b[size_t(j)] * c;
            }
        }
        return out;
    }

    std::vector<F> unit() const {
        std::vector<F> e(basis_.size(), F(0));
        for (int v = 0; v < q_.nv(); ++v) e[size_t(unit_index(v))] = F(1);
        return e;
    }

    // Opposite algebra (arrows and relation paths reversed); built once.
    std::shared_ptr<const Algebra> opposite() const {
        if (!op_) {
            std::vector<Relation<F>> orels = rels_;
            for (auto& r : orels) {
                std::swap(r.src, r.tgt);
                for (auto& [c, p] : r.terms) {
                    (void)c;
                    int t = p.target(q_);
                    std::reverse(p.arrows.begin(), p.arrows.end());
                    p.source = t;
                }
            }
            op_ = std::make_shared<Algebra>(fs_, q_.opposite(), std::move(orels));
        }
        return op_;
    }

    F scalar(long long num, long long den = 1) const { return F::from_spec(fs_, num, den); }

  private:
    FieldSpec fs_;
    Quiver q_;
    std::vector<Relation<F>> rels_;
    PathOrder order_;

    std::vector<Path> basis_;
    std::map<Path, int> basis_pos_;
    std::vector<int> unit_idx_;
    int nilpotency_ = 0;
    std::map<Path, std::vector<std::pair<int, F>>> class_of_;
    mutable std::map<std::pair<int, int>, std::vector<std::pair<int, F>>> mult_memo_;
    mutable std::shared_ptr<const Algebra> op_;

    void validate_relations() {
        for (const auto& a : q_.arrows)
            if (a.src < 0 || a.src >= q_.nv() || a.tgt < 0 || a.tgt >= q_.nv())
                throw AlgebraError("arrow " + a.id + " references undeclared vertex");
        for (size_t k = 0; k < q_.arrows.size(); ++k)
            for (size_t l = k + 1; l < q_.arrows.size(); ++l)
                if (q_.arrows[k].id == q_.arrows[l].id)
                    throw AlgebraError("duplicate arrow id " + q_.arrows[k].id);
        for (const auto& r : rels_) {
            if (r.terms.empty()) throw AlgebraError("empty relation");
            for (auto& [c, p] : r.terms) {
                (void)c;
                if (p.length() < 2)
                    throw AlgebraError("relation path of length < 2 (ideal not admissible)");
                for (size_t k = 0; k + 1 < p.arrows.size(); ++k)
                    if (q_.arrows[size_t(p.arrows[k])].tgt != q_.arrows[size_t(p.arrows[k + 1])].src)
                        throw AlgebraError("relation contains a non-composable path");
                if (p.source != r.src || p.target(q_) != r.tgt)
                    throw AlgebraError("relation mixes non-parallel paths");
            }
        }
    }

    bool relations_homogeneous() const {
        for (const auto& r : rels_) {
            int l = r.terms.front().second.length();
            for (auto& [c, p] : r.terms) {
                (void)c;
                if (p.length() != l) return false;
            }
        }
        return true;
    }

    void build(int length_cap) {
        int delta = 0;  // length spread inside one relation; 0 when homogeneous
        int max_rel_len = 2;
        for (const auto& r : rels_) {
            int lo = r.terms.front().second.length(), hi = lo;
            for (auto& [c, p] : r.terms) {
                (void)c;
                lo = std::min(lo, p.length());
                hi = std::max(hi, p.length());
            }
            delta = std::max(delta, hi - lo);
            max_rel_len = std::max(max_rel_len, hi);
        }

        int window = std::min(length_cap, std::max(2, max_rel_len));
        while (true) {
            int n = try_build(window);
            if (n > 0) {
                int need = std::max(n, n - 1 + delta);
                if (window >= need) {
                    nilpotency_ = n;
                    return;
                }
                if (need > length_cap)
                    throw AlgebraError("reduction window exceeds the path-length cap");
                window = need;
                continue;
            }
            if (window >= length_cap)
                throw AlgebraError(
                    "ideal not seen to be admissible within the path-length cap (" +
                    std::to_string(length_cap) + "); refusing to truncate");
            window = std::min(length_cap, window * 2);
        }
    }

    // One window pass. Returns the least N <= window such that every path of
    // length in [N, window] reduces into the ideal span, or -1 if none.
    // Populates basis/class data on success.
    int try_build(int window) {
        std::vector<std::vector<Path>> by_len(size_t(window) + 1);
        for (int v = 0; v < q_.nv(); ++v) by_len[0].push_back(Path{v, {}});
        size_t total = by_len[0].size();
        for (int l = 1; l <= window; ++l) {
            for (const auto& p : by_len[size_t(l) - 1]) {
                int t = p.target(q_);
                for (int a = 0; a < q_.na(); ++a) {
                    if (q_.arrows[size_t(a)].src != t) continue;
                    Path np = p;
                    np.arrows.push_back(a);
                    by_len[size_t(l)].push_back(std::move(np));
                }
            }
            total += by_len[size_t(l)].size();
            if (total > kPathCountCap)
                throw AlgebraError("path enumeration exploded; ideal admissibility doubtful");
        }

        // The ideal is graded by (source, target), and by length too when the
        // relations are homogeneous; reduce inside blocks to stay small.
        const bool homog = relations_homogeneous();
        using BlockKey = std::tuple<int, int, int>;  // (src, tgt, len or -1)
        auto block_of = [&](const Path& p) {
            return BlockKey{p.source, p.target(q_), homog ? p.length() : -1};
        };

        struct Block {
            std::vector<Path> cols;  // largest first
            std::map<Path, int> pos;
            std::unique_ptr<Span<F>> span;
        };
        std::map<BlockKey, Block> blocks;
        for (const auto& lv : by_len)
            for (const auto& p : lv) blocks[block_of(p)].cols.push_back(p);
        for (auto& [k, b] : blocks) {
            std::sort(b.cols.begin(), b.cols.end(),
                      [&](const Path& x, const Path& y) { return order_.less(y, x); });
            for (size_t i = 0; i < b.cols.size(); ++i) b.pos[b.cols[i]] = int(i);
            b.span = std::make_unique<Span<F>>(int(b.cols.size()));
        }

        auto add_shift = [&](const Path& p, const Relation<F>& r, const Path& s) {
            Block* blk = nullptr;
            std::vector<F> row;
            for (auto& [c, mid] : r.terms) {
                Path full = p;
                full.arrows.insert(full.arrows.end(), mid.arrows.begin(), mid.arrows.end());
                full.arrows.insert(full.arrows.end(), s.arrows.begin(), s.arrows.end());
                if (full.length() > window) return;  // shift leaves the window
                if (!blk) {
                    blk = &blocks.at(block_of(full));
                    row.assign(blk->cols.size(), F(0));
                }
                row[size_t(blk->pos.at(full))] += c;
            }
            if (blk) blk->span->insert(std::move(row));
        };

        for (const auto& r : rels_)
            for (int lp = 0; lp + 2 <= window; ++lp)
                for (const auto& p : by_len[size_t(lp)]) {
                    if (p.target(q_) != r.src) continue;
                    for (int ls = 0; lp + 2 + ls <= window; ++ls)
                        for (const auto& s : by_len[size_t(ls)]) {
                            if (s.source != r.tgt) continue;
                            add_shift(p, r, s);
                        }
                }

        auto path_dead = [&](const Path& p) {
            const Block& b = blocks.at(block_of(p));
            std::vector<F> e(b.cols.size(), F(0));
            e[size_t(b.pos.at(p))] = F(1);
            return b.span->contains(e);
        };

        int found_n = -1;
        for (int l = window; l >= 1; --l) {
            bool all_dead = true;
            for (const auto& p : by_len[size_t(l)])
                if (!path_dead(p)) { all_dead = false; break; }
            if (!all_dead) break;
            found_n = l;
        }
        if (found_n < 0) return -1;

        basis_.clear();
        basis_pos_.clear();
        class_of_.clear();
        for (auto& [k, b] : blocks) {
            for (int j : b.span->cobasis()) {
                const Path& p = b.cols[size_t(j)];
                if (p.length() < found_n) basis_.push_back(p);
            }
        }
        std::sort(basis_.begin(), basis_.end(),
                  [&](const Path& a, const Path& b) { return order_.less(a, b); });
        for (size_t i = 0; i < basis_.size(); ++i) basis_pos_[basis_[i]] = int(i);

        for (const auto& lv : by_len)
            for (const auto& p : lv) {
                if (p.length() >= found_n) continue;
                const Block& b = blocks.at(block_of(p));
                auto cob = b.span->cobasis();
                std::vector<F> e(b.cols.size(), F(0));
                e[size_t(b.pos.at(p))] = F(1);
                auto qc = b.span->quotient_coords(e, cob);
                std::vector<std::pair<int, F>> cls;
                for (size_t t = 0; t < qc.size(); ++t) {
                    if (qc[t].is_zero()) continue;
                    int bi = basis_index(b.cols[size_t(cob[t])]);
                    if (bi < 0)
                        throw AlgebraError("internal: class meets a column beyond nilpotency");
                    cls.push_back({bi, qc[t]});
                }
                std::sort(cls.begin(), cls.end(), [](auto& a, auto& b) { return a.first < b.first; });
                if (!cls.empty()) class_of_[p] = std::move(cls);
            }

        unit_idx_.assign(size_t(q_.nv()), -1);
        for (int v = 0; v < q_.nv(); ++v) {
            int idx = basis_index(Path{v, {}});
            if (idx < 0) throw AlgebraError("internal: trivial path not in basis");
            unit_idx_[size_t(v)] = idx;
        }
        return found_n;
    }
};

template <Field F>
using AlgPtr = std::shared_ptr<const Algebra<F>>;

}  // namespace extdim
