#include <catch2/catch_amalgamated.hpp>

#include "extdim/lab.hpp"
#include "extdim/torsion.hpp"
#include "extdim/algebra_io.hpp"
#include "helpers.hpp"

using namespace extdim;
using namespace testing_helpers;

namespace {

bool contains_class(const std::vector<RepPtr<Fp>>& list, const RepPtr<Fp>& m) {
    for (auto& r : list)
        if (is_iso(r, m)) return true;
    return false;
}

bool subset_of(const std::vector<RepPtr<Fp>>& a, const std::vector<RepPtr<Fp>>& b) {
    for (auto& r : a)
        if (!contains_class(b, r)) return false;
    return true;
}

bool same_classes(const std::vector<RepPtr<Fp>>& a, const std::vector<RepPtr<Fp>>& b) {
    return subset_of(a, b) && subset_of(b, a);
}

}  // namespace

TEST_CASE("exhaustive enumeration over F2") {
    auto a2 = parse_algebra<Fp>(a2_text("F 2"));
    HomCtx<Fp> ctx(a2);
    Lab<Fp> lab(ctx, SearchBudget{4, 4096, 2000000, 3, 0xE3D1});

    auto indec = lab.enumerate_indecomposables(4);
    REQUIRE(indec.size() == 3);
    REQUIRE(contains_class(indec, ctx.simple_at(0)));
    REQUIRE(contains_class(indec, ctx.simple_at(1)));
    REQUIRE(contains_class(indec, ctx.proj_at(0)));

    auto a3 = parse_algebra<Fp>(a3_text("F 2"));
    HomCtx<Fp> ctx3(a3);
    Lab<Fp> lab3(ctx3, SearchBudget{6, 4096, 2000000, 3, 0xE3D1});
    auto indec3 = lab3.enumerate_indecomposables(6);
    REQUIRE(indec3.size() == 6);  // the interval modules of 1 -> 2 -> 3
}

TEST_CASE("extension dimension of small hereditary toys is exactly zero") {
    auto a2 = parse_algebra<Fp>(a2_text("F 2"));
    HomCtx<Fp> ctx(a2);
    Lab<Fp> lab(ctx, SearchBudget{4, 4096, 2000000, 3, 0xE3D1});
    auto r = lab.extension_dim(4);
    REQUIRE(r.exact);
    REQUIRE(r.value == 0);
    REQUIRE(r.generator.size() == 3);

    auto a3 = parse_algebra<Fp>(a3_text("F 2"));
    HomCtx<Fp> ctx3(a3);
    Lab<Fp> lab3(ctx3, SearchBudget{6, 4096, 2000000, 3, 0xE3D1});
    auto r3 = lab3.extension_dim(6);
    REQUIRE(r3.exact);
    REQUIRE(r3.value == 0);
    REQUIRE(r3.generator.size() == 6);

    // semisimple: one isolated vertex
    auto ss = parse_algebra<Fp>("field F 2\nvertices 1\n");
    HomCtx<Fp> ctxs(ss);
    Lab<Fp> labs(ctxs, SearchBudget{3, 4096, 2000000, 3, 0xE3D1});
    auto rs = labs.extension_dim(3);
    REQUIRE(rs.exact);
    REQUIRE(rs.value == 0);
    REQUIRE(rs.generator.size() == 1);
}

TEST_CASE("diamond brute force over A2/F2") {
    auto a2 = parse_algebra<Fp>(a2_text("F 2"));
    HomCtx<Fp> ctx(a2);
    Lab<Fp> lab(ctx, SearchBudget{4, 4096, 2000000, 2, 0xE3D1});
    auto s1 = ctx.simple_at(0), s2 = ctx.simple_at(1), p1 = ctx.proj_at(0);

    // <S(2)>_1 <> <S(1)>_1 contains P(1) through the nonsplit extension
    auto d12 = lab.diamond({s2}, {s1});
    REQUIRE(contains_class(d12, s1));
    REQUIRE(contains_class(d12, s2));
    REQUIRE(contains_class(d12, p1));
    REQUIRE(d12.size() == 3);

    // the other order splits only
    auto d21 = lab.diamond({s1}, {s2});
    REQUIRE(contains_class(d21, s1));
    REQUIRE(contains_class(d21, s2));
    REQUIRE_FALSE(contains_class(d21, p1));

    // zero inputs
    auto dz = lab.diamond({zero_rep(a2)}, {zero_rep(a2)});
    REQUIRE(dz.empty());
}

TEST_CASE("monotonicity and level growth of enumerated layers") {
    auto a2 = parse_algebra<Fp>(a2_text("F 2"));
    HomCtx<Fp> ctx(a2);
    Lab<Fp> lab(ctx, SearchBudget{4, 4096, 2000000, 2, 0xE3D1});
    auto s1 = ctx.simple_at(0), s2 = ctx.simple_at(1);

    auto small = lab.layers({s1}, 3);
    auto big = lab.layers({direct_sum(a2, {s1, s2}).sum}, 3);
    for (int k = 0; k < 3; ++k) REQUIRE(subset_of(small[size_t(k)], big[size_t(k)]));

    // <T>_n grows with n
    for (int k = 0; k + 1 < 3; ++k) REQUIRE(subset_of(big[size_t(k)], big[size_t(k) + 1]));

    // Cor 2.3(1)-style inclusion: <T1>_1 <> <T2>_1 inside <T1 (+) T2>_2
    auto lhs = lab.diamond({s2}, {s1});
    REQUIRE(subset_of(lhs, big[1]));
}

TEST_CASE("diamond is associative on enumerated universes") {
    auto a2 = parse_algebra<Fp>(a2_text("F 2"));
    HomCtx<Fp> ctx(a2);
    // triple the cap for the intermediate sets
    Lab<Fp> lab(ctx, SearchBudget{9, 8192, 2000000, 2, 0xE3D1});
    auto s1 = ctx.simple_at(0), s2 = ctx.simple_at(1), p1 = ctx.proj_at(0);

    std::vector<std::vector<RepPtr<Fp>>> us{{s2}, {s1}, {p1}};
    auto left = lab.diamond(lab.diamond(us[0], us[1]), us[2]);
    auto right = lab.diamond(us[0], lab.diamond(us[1], us[2]));
    REQUIRE(same_classes(left, right));

    std::vector<std::vector<RepPtr<Fp>>> us2{{s1}, {s2}, {s2}};
    auto l2 = lab.diamond(lab.diamond(us2[0], us2[1]), us2[2]);
    auto r2 = lab.diamond(us2[0], lab.diamond(us2[1], us2[2]));
    REQUIRE(same_classes(l2, r2));
}

TEST_CASE("membership search with certificates") {
    auto a2 = parse_algebra<Fp>(a2_text("F 2"));
    HomCtx<Fp> ctx(a2);
    Lab<Fp> lab(ctx, SearchBudget{6, 4096, 2000000, 2, 0xE3D1});
    auto s1 = ctx.simple_at(0), s2 = ctx.simple_at(1), p1 = ctx.proj_at(0);

    // any M lies in <M>_1 with an immediate leaf
    auto self_test = lab.tn_membership(s1, {s1}, 1);
    REQUIRE(self_test.verdict == Lab<Fp>::TnSearch::Verdict::Found);
    REQUIRE(verify_filtration<Fp>(self_test.cert, {s1}, s1, 1));

    // depth 1 is decidable: S(1) is not projective
    GenSet<Fp> lambda = ctx.projective_gens();
    auto no = lab.tn_membership(s1, lambda, 1);
    REQUIRE(no.verdict == Lab<Fp>::TnSearch::Verdict::No);

    // P(1) in <S(1) (+) S(2)>_2 via the nonsplit extension, with a verified
    // certificate
    auto found = lab.tn_membership(p1, {s1, s2}, 2);
    REQUIRE(found.verdict == Lab<Fp>::TnSearch::Verdict::Found);
    GenSet<Fp> both{s1, s2};
    CertVerifier<Fp> v(both);
    auto rep = v.verify(found.cert, p1, 2);
    INFO(rep.path << ": " << rep.reason);
    REQUIRE(rep.ok);

    // extensions of projectives by projectives always split, so searching
    // for S(1) inside <Lambda>_2 must come back empty-handed (Unknown; the
    // search cannot certify non-membership at depth 2)
    auto unknown = lab.tn_membership(s1, lambda, 2);
    REQUIRE(unknown.verdict == Lab<Fp>::TnSearch::Verdict::Unknown);

    // the repaired statement: S(1) lies in <Lambda (+) W^{-1}(Lambda)>_2,
    // indeed already in its add
    GenSet<Fp> enriched = lambda;
    for (int vtx = 0; vtx < 2; ++vtx) enriched.push_back(ctx.syzygy(ctx.proj_at(vtx), -1));
    auto fixed = lab.tn_membership(s1, enriched, 2);
    REQUIRE(fixed.verdict == Lab<Fp>::TnSearch::Verdict::Found);
    REQUIRE(verify_filtration(fixed.cert, enriched, s1, 2));
}

TEST_CASE("greedy weak resolution dimension") {
    auto a2q = parse_algebra<Rat>(a2_text());
    HomCtx<Rat> ctx(a2q);
    auto s1 = ctx.simple_at(0);

    // X in add(gens) gives 0
    auto r0 = wresoldim_greedy<Rat>(ctx, {s1}, s1, 4);
    REQUIRE(r0.known);
    REQUIRE(r0.value == 0);

    // hereditary: the projective resolution
    auto r1 = wresoldim_greedy(ctx, ctx.projective_gens(), s1, 4);
    REQUIRE(r1.known);
    REQUIRE(r1.value == 1);
    REQUIRE(resolution_ok(r1.resolution));

    // family: Lambda (+) simples resolves everything within LL - 1
    auto fam = parse_algebra<Rat>(family_text(5));
    HomCtx<Rat> fctx(fam);
    GenSet<Rat> gens = fctx.projective_gens();
    for (int v = 0; v < 11; ++v) gens.push_back(fctx.simple_at(v));
    for (int v : {0, 5, 9}) {
        auto x = radical(fctx.proj_at(v)).rep();
        auto r = wresoldim_greedy(fctx, gens, x, 8);
        REQUIRE(r.known);
        REQUIRE(r.value <= 4);
        // and the resolution feeds the certificate machinery
        auto cert = resolution_to_filtration(fctx, r.resolution);
        REQUIRE(verify_filtration(cert, resolution_generators(fctx, r.resolution), x,
                                  int(r.resolution.terms.size())));
    }

    // not generated: S(2) does not generate S(1) over A2
    auto rg = wresoldim_greedy<Rat>(ctx, {ctx.simple_at(1)}, s1, 4);
    REQUIRE_FALSE(rg.known);
}

TEST_CASE("two-term resolution checks") {
    auto a2 = parse_algebra<Rat>(a2_text());
    HomCtx<Rat> ctx(a2);
    auto s1 = ctx.simple_at(0), s2 = ctx.simple_at(1);

    // V = Lambda, n = gldim: syzygies are projective
    GenSet<Rat> lambda = ctx.projective_gens();
    for (int v = 0; v < 2; ++v) {
        auto x = ctx.syzygy(ctx.simple_at(v), 1);
        auto verdict = two_term_check(ctx, lambda, x);
        REQUIRE(verdict.value == TwoTermVerdict::Value::True);
    }

    // V = S(2) (+) Lambda, n = 0: every indecomposable of A2 passes
    GenSet<Rat> v0 = lambda;
    v0.push_back(s2);
    for (auto& m : {s1, s2, ctx.proj_at(0)}) {
        auto verdict = two_term_check(ctx, v0, m);
        REQUIRE(verdict.value == TwoTermVerdict::Value::True);
    }

    // V = 0 against a nonzero module: definite negative
    auto verdict = two_term_check<Rat>(ctx, {}, s1);
    REQUIRE(verdict.value == TwoTermVerdict::Value::False);
}

TEST_CASE("certificate transport under idempotent truncation") {
    // A3 -> A2 on the vertex set {1, 2}
    auto a3 = parse_algebra<Fp>(a3_text("F 2"));
    auto a2 = parse_algebra<Fp>(a2_text("F 2"));
    HomCtx<Fp> ctx3(a3);
    Truncation<Fp> tr(a3, a2, {0, 1});

    // build a certificate over A3: the middle of the radical sequence
    // 0 -> rad P(1) -> P(1) -> S(1) -> 0
    auto p1 = ctx3.proj_at(0);
    auto rad1 = radical(p1);
    SES<Fp> ses{rad1.incl, top(p1).proj};
    REQUIRE(ses.ok());
    GenSet<Fp> gens{rad1.rep(), top(p1).rep()};
    auto cert = cert_ext(ses, cert_leaf(ses.left()), cert_leaf(ses.right()));
    REQUIRE(verify_filtration<Fp>(cert, gens, ses.middle(), 2));

    auto tcert = tr.cert(cert);
    auto tgens = tr.gens(gens);
    REQUIRE(verify_filtration<Fp>(tcert, tgens, tr.rep(ses.middle()), 2));

    // incompatible truncations are rejected: {1,3} misses the connecting path
    REQUIRE_THROWS_AS(Truncation<Fp>(a3, a2, std::vector<int>{0, 2}), std::invalid_argument);
}
