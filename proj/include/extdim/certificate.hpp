#pragma once

// Filtration certificates: verifiable witnesses that a module M lies in the
// n-fold extension closure <T>_n of add T.
//
//   <T>_0 = 0,  <T>_1 = add T,  <T>_n = <T>_1 <> <T>_{n-1},
//
// where U <> V is the add-closure of the middle terms of short exact
// sequences with ends in U and V. A certificate is a tree:
//
//   Zero            the zero module, any depth >= 0
//   AddLeaf         is_in_add(module, T), depth >= 1
//   Ext             module IS the middle of a verified short exact sequence
//                   0 -> U -> module -> V -> 0, children certify U at depth
//                   d_U and V at depth d_V, claim d_U + d_V (the operator <>
//                   is associative, so general child depths are sound)
//   Summand         an explicit split pair module -> host -> module
//                   composing to the identity, host certified at the same
//                   depth (every <T>_n is closed under direct summands)
//   Sum             module is the structural direct sum of the children's
//                   modules, claimed at the max of their depths (every <T>_n
//                   is closed under finite direct sums)
//
// Verification is deterministic, side-effect-free exact linear algebra.
// Malformed trees (structural mismatches) are distinguished from honest
// verification failures (a leaf outside add T, an inexact sequence, a split
// pair that does not compose to the identity, a depth overflow).

#include "extdim/homology.hpp"

namespace extdim {

template <Field F>
struct Cert;

template <Field F>
using CertPtr = std::shared_ptr<const Cert<F>>;

template <Field F>
struct Cert {
    enum class Kind { Zero, AddLeaf, Ext, Summand, Sum };

    Kind kind = Kind::Zero;
    RepPtr<F> module;
    int depth = 0;  // the claim: module lies in <T>_depth

    // Ext
    std::optional<SES<F>> ses;
    CertPtr<F> child_u, child_v;

    // Summand
    std::optional<Map<F>> iota, pi;  // module -> host, host -> module
    CertPtr<F> child;

    // Sum
    std::vector<CertPtr<F>> parts;
};

template <Field F>
CertPtr<F> cert_zero(const RepPtr<F>& m) {
    auto c = std::make_shared<Cert<F>>();
    c->kind = Cert<F>::Kind::Zero;
    c->module = m;
    c->depth = 0;
    return c;
}

template <Field F>
CertPtr<F> cert_leaf(const RepPtr<F>& m) {
    auto c = std::make_shared<Cert<F>>();
    c->kind = Cert<F>::Kind::AddLeaf;
    c->module = m;
    c->depth = 1;
    return c;
}

template <Field F>
CertPtr<F> cert_ext(SES<F> ses, CertPtr<F> cu, CertPtr<F> cv) {
    auto c = std::make_shared<Cert<F>>();
    c->kind = Cert<F>::Kind::Ext;
    c->module = ses.middle();
    c->depth = std::max(1, cu->depth + cv->depth);
    c->ses = std::move(ses);
    c->child_u = std::move(cu);
    c->child_v = std::move(cv);
    return c;
}

template <Field F>
CertPtr<F> cert_summand(const RepPtr<F>& m, Map<F> iota, Map<F> pi, CertPtr<F> host) {
    auto c = std::make_shared<Cert<F>>();
    c->kind = Cert<F>::Kind::Summand;
    c->module = m;
    c->depth = host->depth;
    c->iota = std::move(iota);
    c->pi = std::move(pi);
    c->child = std::move(host);
    return c;
}

template <Field F>
CertPtr<F> cert_sum(const AlgPtr<F>& alg, std::vector<CertPtr<F>> parts) {
    auto c = std::make_shared<Cert<F>>();
    c->kind = Cert<F>::Kind::Sum;
    std::vector<RepPtr<F>> mods;
    for (auto& p : parts) {
        mods.push_back(p->module);
        c->depth = std::max(c->depth, p->depth);
    }
    c->module = direct_sum(alg, mods).sum;
    c->parts = std::move(parts);
    return c;
}

// raise the claimed depth (<T>_n is increasing in n)
template <Field F>
CertPtr<F> cert_at_depth(const CertPtr<F>& c, int depth) {
    if (depth < c->depth) throw std::logic_error("cert_at_depth: cannot lower a claim");
    if (depth == c->depth) return c;
    auto copy = std::make_shared<Cert<F>>(*c);
    copy->depth = depth;
    return copy;
}

template <Field F>
int cert_node_count(const CertPtr<F>& c) {
    int n = 1;
    if (c->child_u) n += cert_node_count(c->child_u);
    if (c->child_v) n += cert_node_count(c->child_v);
    if (c->child) n += cert_node_count(c->child);
    for (const auto& p : c->parts) n += cert_node_count(p);
    return n;
}

struct VerifyReport {
    bool ok = true;
    bool malformed = false;   // structural defect, as opposed to an honest failure
    std::string path;         // tree path of the first failure
    std::string reason;

    static VerifyReport good() { return {}; }
    static VerifyReport fail(bool malformed, std::string path, std::string reason) {
        return {false, malformed, std::move(path), std::move(reason)};
    }
};

template <Field F>
class CertVerifier {
  public:
    explicit CertVerifier(GenSet<F> gens) : gens_(std::move(gens)) {}

    // Is cert a valid witness for claimed_module in <T>_n ?
    VerifyReport verify(const CertPtr<F>& cert, const RepPtr<F>& claimed_module, int n) {
        if (!cert) return VerifyReport::fail(true, "root", "missing certificate");
        if (!rep_equal(*cert->module, *claimed_module))
            return VerifyReport::fail(true, "root", "certificate is about a different module");
        if (cert->depth > n)
            return VerifyReport::fail(false, "root",
                                      "claimed depth " + std::to_string(cert->depth) +
                                          " exceeds the allowed " + std::to_string(n));
        return check(cert, "root");
    }

  private:
    GenSet<F> gens_;

    VerifyReport check(const CertPtr<F>& c, const std::string& path) {
        if (!c || !c->module) return VerifyReport::fail(true, path, "dangling node");
        switch (c->kind) {
            case Cert<F>::Kind::Zero:
                if (!c->module->is_zero())
                    return VerifyReport::fail(false, path, "zero node for a nonzero module");
                if (c->depth < 0) return VerifyReport::fail(true, path, "negative depth");
                return VerifyReport::good();

            case Cert<F>::Kind::AddLeaf:
                if (c->depth < 1) return VerifyReport::fail(true, path, "leaf at depth < 1");
                if (!is_in_add(c->module, gens_))
                    return VerifyReport::fail(false, path, "leaf fails add-membership");
                return VerifyReport::good();

            case Cert<F>::Kind::Ext: {
                if (!c->ses || !c->child_u || !c->child_v)
                    return VerifyReport::fail(true, path, "extension node missing pieces");
                if (!rep_equal(*c->module, *c->ses->middle()))
                    return VerifyReport::fail(true, path, "node module is not the middle term");
                if (!rep_equal(*c->child_u->module, *c->ses->left()) ||
                    !rep_equal(*c->child_v->module, *c->ses->right()))
                    return VerifyReport::fail(true, path, "children do not match sequence ends");
                if (c->depth < c->child_u->depth + c->child_v->depth)
                    return VerifyReport::fail(false, path, "depth budget overflow");
                if (!c->ses->ok())
                    return VerifyReport::fail(false, path, "sequence is not exact");
                if (auto r = check(c->child_u, path + "/left"); !r.ok) return r;
                return check(c->child_v, path + "/right");
            }

            case Cert<F>::Kind::Summand: {
                if (!c->iota || !c->pi || !c->child)
                    return VerifyReport::fail(true, path, "summand node missing pieces");
                if (!rep_equal(*c->iota->tgt, *c->child->module) ||
                    !rep_equal(*c->pi->src, *c->child->module) ||
                    !rep_equal(*c->iota->src, *c->module) || !rep_equal(*c->pi->tgt, *c->module))
                    return VerifyReport::fail(true, path, "split pair endpoints mismatch");
                if (c->depth < c->child->depth)
                    return VerifyReport::fail(false, path, "depth budget overflow");
                if (!intertwines(*c->iota) || !intertwines(*c->pi))
                    return VerifyReport::fail(false, path, "split maps are not module maps");
                if (!is_identity(compose(*c->pi, *c->iota)))
                    return VerifyReport::fail(false, path,
                                              "split pair does not compose to the identity");
                return check(c->child, path + "/host");
            }

            case Cert<F>::Kind::Sum: {
                std::vector<RepPtr<F>> mods;
                for (auto& p : c->parts) {
                    if (!p) return VerifyReport::fail(true, path, "missing sum part");
                    mods.push_back(p->module);
                    if (c->depth < p->depth)
                        return VerifyReport::fail(false, path, "depth budget overflow");
                }
                auto sum = direct_sum(c->module->alg, mods).sum;
                if (!rep_equal(*sum, *c->module))
                    return VerifyReport::fail(true, path,
                                              "module is not the structural sum of the parts");
                for (size_t i = 0; i < c->parts.size(); ++i)
                    if (auto r = check(c->parts[i], path + "/part" + std::to_string(i)); !r.ok)
                        return r;
                return VerifyReport::good();
            }
        }
        return VerifyReport::fail(true, path, "unknown node kind");
    }
};

template <Field F>
bool verify_filtration(const CertPtr<F>& cert, const GenSet<F>& gens, const RepPtr<F>& m, int n) {
    CertVerifier<F> v(gens);
    return v.verify(cert, m, n).ok;
}

}  // namespace extdim
