#include "doctest.h"

#include "lalg/eform.hpp"
#include "lalg/rng.hpp"

using namespace lalg;

namespace {

struct World {
    VarPool pool;
    std::vector<VarId> X3d, X2d, X4d;
    World()
    {
        for (int i = 1; i <= 4; ++i)
            X4d.push_back(pool.declare("X" + std::to_string(i), VarKind::TargetCoord));
        X3d = {X4d[0], X4d[1], X4d[2]};
        X2d = {X4d[0], X4d[1]};
    }
    Poly P(const std::string& s) { return parse_poly(s, pool); }

    std::vector<std::vector<Poly>> lie_poisson_so3()
    {
        // P^{ij} = eps^{ij}_k X^k
        std::vector<std::vector<Poly>> P(3, std::vector<Poly>(3));
        P[0][1] = Poly::variable(X3d[2]);
        P[1][0] = -P[0][1];
        P[1][2] = Poly::variable(X3d[0]);
        P[2][1] = -P[1][2];
        P[2][0] = Poly::variable(X3d[1]);
        P[0][2] = -P[2][0];
        return P;
    }
};

Algebroid perturbed_so3()
{
    // so(3) with an extra C^1_12 = 1: [b1,b2] = b1 + b3 breaks Jacobi
    Algebroid E = so3();
    E.set_structure(0, 0, 1, Poly::constant(1));
    return E;
}

} // namespace

TEST_CASE("axioms: standard examples pass")
{
    World w;
    CHECK(verify_axioms(so3()).ok());
    CHECK(verify_axioms(tangent_bundle(w.X2d, w.pool)).ok());
    CHECK(verify_axioms(tangent_bundle(w.X3d, w.pool)).ok());
    CHECK(verify_axioms(poisson_cotangent(w.X3d, w.lie_poisson_so3())).ok());
    // symplectic R^2
    std::vector<std::vector<Poly>> P(2, std::vector<Poly>(2));
    P[0][1] = Poly::constant(1);
    P[1][0] = Poly::constant(-1);
    CHECK(verify_axioms(poisson_cotangent(w.X2d, P)).ok());
}

TEST_CASE("axioms: perturbed so(3) fails with witness (1,2,3)")
{
    AxiomReport rep = verify_axioms(perturbed_so3());
    CHECK(rep.anchor_compat); // anchor is zero
    CHECK(!rep.jacobi);
    REQUIRE(!rep.jacobi_witnesses.empty());
    auto& ws = rep.jacobi_witnesses.front().indices;
    CHECK(ws[0] == 1);
    CHECK(ws[1] == 2);
    CHECK(ws[2] == 3);
    // a rescaled so(3) (C^3_12 = 2) is still a Lie algebra
    Algebroid rescaled = so3();
    rescaled.set_structure(2, 0, 1, Poly::constant(2));
    CHECK(verify_axioms(rescaled).ok());
}

TEST_CASE("axioms agree with the d^2 = 0 route")
{
    World w;
    std::vector<Algebroid> corpus;
    corpus.push_back(so3());
    corpus.push_back(perturbed_so3());
    corpus.push_back(tangent_bundle(w.X2d, w.pool));
    corpus.push_back(poisson_cotangent(w.X3d, w.lie_poisson_so3()));
    {
        // anchored failure: rho not compatible with C = 0
        Algebroid bad(w.X2d, {"f1", "f2"});
        bad.set_anchor(0, 0, Poly::constant(1));
        bad.set_anchor(1, 0, Poly::variable(w.X2d[0]));
        bad.set_anchor(1, 1, Poly::constant(1));
        corpus.push_back(bad);
    }
    for (auto& E : corpus) {
        AxiomReport a = verify_axioms(E);
        AxiomReport b = verify_axioms_via_d2(E);
        CHECK(a.anchor_compat == b.anchor_compat);
        CHECK(a.jacobi == b.jacobi);
    }
}

TEST_CASE("jacobi_poisson")
{
    World w;
    SUBCASE("dimension 2 is always Jacobi")
    {
        std::vector<std::vector<Poly>> P(2, std::vector<Poly>(2));
        P[0][1] = w.P("X1^2");
        P[1][0] = -P[0][1];
        CHECK(jacobi_poisson(w.X2d, P).jacobi);
    }
    SUBCASE("a non-Jacobi bivector on R^3 is caught with its triple")
    {
        // {X1,X2} = 1, {X2,X3} = X2: cyclic sum on (1,2,3) equals 1
        std::vector<std::vector<Poly>> P(3, std::vector<Poly>(3));
        P[0][1] = Poly::constant(1);
        P[1][0] = Poly::constant(-1);
        P[1][2] = Poly::variable(w.X3d[1]);
        P[2][1] = -P[1][2];
        PoissonReport rep = jacobi_poisson(w.X3d, P);
        CHECK(!rep.jacobi);
        REQUIRE(!rep.witnesses.empty());
        CHECK(rep.witnesses[0].indices == std::vector<int>{1, 2, 3});
        CHECK(rep.witnesses[0].defect == Poly::constant(1));
    }
    SUBCASE("Lie-Poisson so(3)* is Jacobi")
    {
        CHECK(jacobi_poisson(w.X3d, w.lie_poisson_so3()).jacobi);
    }
    SUBCASE("not antisymmetric throws")
    {
        std::vector<std::vector<Poly>> P(2, std::vector<Poly>(2));
        P[0][1] = Poly::constant(1);
        P[1][0] = Poly::constant(1);
        CHECK_THROWS_AS(jacobi_poisson(w.X2d, P), Error);
    }
}

TEST_CASE("jacobi_poisson agrees with poisson_cotangent axioms")
{
    World w;
    Rng rng(31);
    for (int t = 0; t < 12; ++t) {
        int n = 2 + static_cast<int>(rng.below(2));
        std::vector<VarId> coords(w.X3d.begin(), w.X3d.begin() + n);
        std::vector<std::vector<Poly>> P(static_cast<size_t>(n), std::vector<Poly>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                P[static_cast<size_t>(i)][static_cast<size_t>(j)] = random_poly(rng, coords, 2);
                P[static_cast<size_t>(j)][static_cast<size_t>(i)] =
                    -P[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
        bool direct = jacobi_poisson(coords, P).jacobi;
        bool via_algebroid = verify_axioms(poisson_cotangent(coords, P)).jacobi;
        CHECK(direct == via_algebroid);
    }
}

TEST_CASE("poisson_cotangent special cases")
{
    World w;
    // zero Poisson tensor on R^4: zero anchor and structure
    std::vector<std::vector<Poly>> P(4, std::vector<Poly>(4));
    Algebroid E = poisson_cotangent(w.X4d, P);
    CHECK(E.rank() == 4);
    for (int I = 0; I < 4; ++I)
        for (int i = 0; i < 4; ++i)
            CHECK(E.anchor(I, i).is_zero());
    for (int I = 0; I < 4; ++I)
        for (int J = 0; J < 4; ++J)
            for (int K = J + 1; K < 4; ++K)
                CHECK(E.structure(I, J, K).is_zero());
    CHECK(verify_axioms(E).ok());

    // abelian rank-2 Lie algebra
    CHECK(verify_axioms(lie_algebra({"a1", "a2"}, {})).ok());
}

TEST_CASE("exterior sum")
{
    World w;
    VarPool& pool = w.pool;
    std::vector<VarId> sig = {pool.declare("x1", VarKind::SourceCoord),
                              pool.declare("x2", VarKind::SourceCoord)};
    Algebroid TS = tangent_bundle(sig, pool);
    std::vector<std::vector<Poly>> P4(4, std::vector<Poly>(4));
    Algebroid T4 = poisson_cotangent(w.X4d, P4);
    Algebroid S = exterior_sum(TS, T4);
    CHECK(S.rank() == 6);
    CHECK(S.dim() == 6);
    for (int I = 0; I < 6; ++I)
        for (int J = 0; J < 6; ++J)
            for (int K = J + 1; K < 6; ++K)
                CHECK(S.structure(I, J, K).is_zero());

    Algebroid S2 = exterior_sum(TS, so3());
    CHECK(S2.rank() == 5);
    CHECK(S2.structure(4, 2, 3) == Poly::constant(1)); // block of so(3): C^3_12 -> C^5_34
    CHECK(verify_axioms(S2).ok());

    // axiom preservation on sums of passing factors
    Algebroid S3 = exterior_sum(poisson_cotangent(w.X3d, w.lie_poisson_so3(), "p"), so3());
    CHECK(verify_axioms(S3).ok());

    CHECK_THROWS_AS(exterior_sum(TS, TS), Error);
}

TEST_CASE("frame change")
{
    World w;
    Algebroid E = so3();
    SUBCASE("identity frame change is a no-op")
    {
        std::vector<std::vector<Poly>> I3(3, std::vector<Poly>(3));
        for (int i = 0; i < 3; ++i)
            I3[static_cast<size_t>(i)][static_cast<size_t>(i)] = Poly::constant(1);
        FrameChange F(E, I3, I3);
        Algebroid T = change_frame(E, F);
        for (int I = 0; I < 3; ++I)
            for (int J = 0; J < 3; ++J)
                for (int K = J + 1; K < 3; ++K)
                    CHECK(T.structure(I, J, K) == E.structure(I, J, K));
    }
    SUBCASE("invalid inverse is rejected")
    {
        std::vector<std::vector<Poly>> B(3, std::vector<Poly>(3)), Binv(3, std::vector<Poly>(3));
        for (int i = 0; i < 3; ++i) {
            B[static_cast<size_t>(i)][static_cast<size_t>(i)] = Poly::constant(2);
            Binv[static_cast<size_t>(i)][static_cast<size_t>(i)] = Poly::constant(1);
        }
        CHECK_THROWS_AS(FrameChange(E, B, Binv), Error);
    }
    SUBCASE("constant B acts as the adjoint-type transform on a Lie algebra")
    {
        // B maps b^I = B^I_J btilde^J; for constant B the derivative terms drop
        std::vector<std::vector<Poly>> B(3, std::vector<Poly>(3)), Binv(3, std::vector<Poly>(3));
        // a unipotent integer matrix
        for (int i = 0; i < 3; ++i) {
            B[static_cast<size_t>(i)][static_cast<size_t>(i)] = Poly::constant(1);
            Binv[static_cast<size_t>(i)][static_cast<size_t>(i)] = Poly::constant(1);
        }
        B[0][1] = Poly::constant(2);
        Binv[0][1] = Poly::constant(-2);
        FrameChange F(E, B, Binv);
        Algebroid T = change_frame(E, F);
        // direct check: Ctilde^N_JK = (B^-1)^N_M B^I_J B^L_K C^M_IL
        for (int N = 0; N < 3; ++N)
            for (int J = 0; J < 3; ++J)
                for (int K = J + 1; K < 3; ++K) {
                    Poly expect;
                    for (int M = 0; M < 3; ++M)
                        for (int I = 0; I < 3; ++I)
                            for (int L = 0; L < 3; ++L)
                                expect += Binv[static_cast<size_t>(N)][static_cast<size_t>(M)] *
                                          B[static_cast<size_t>(I)][static_cast<size_t>(J)] *
                                          B[static_cast<size_t>(L)][static_cast<size_t>(K)] *
                                          E.structure(M, I, L);
                    CHECK(T.structure(N, J, K) == expect);
                }
        CHECK(verify_axioms(T).ok());
    }
    SUBCASE("round trip through F and F^-1, polynomial B")
    {
        World v;
        Algebroid EP = poisson_cotangent(v.X2d, [&] {
            std::vector<std::vector<Poly>> P(2, std::vector<Poly>(2));
            P[0][1] = v.P("X1^2");
            P[1][0] = -P[0][1];
            return P;
        }());
        std::vector<std::vector<Poly>> B(2, std::vector<Poly>(2)), Binv(2, std::vector<Poly>(2));
        B[0][0] = Poly::constant(1);
        B[1][1] = Poly::constant(1);
        B[0][1] = v.P("X1");
        Binv[0][0] = Poly::constant(1);
        Binv[1][1] = Poly::constant(1);
        Binv[0][1] = v.P("-X1");
        FrameChange F(EP, B, Binv);
        FrameChange Finv(EP, Binv, B);
        Algebroid tilde = change_frame(EP, F);
        CHECK(verify_axioms(tilde).ok());
        Algebroid back = change_frame(tilde, Finv);
        for (int I = 0; I < 2; ++I)
            for (int i = 0; i < 2; ++i)
                CHECK(back.anchor(I, i) == EP.anchor(I, i));
        for (int I = 0; I < 2; ++I)
            CHECK(back.structure(I, 0, 1) == EP.structure(I, 0, 1));
    }
}

TEST_CASE("section bracket")
{
    World w;
    Algebroid E = so3();
    Section e1{{Poly::constant(1), Poly{}, Poly{}}};
    Section e2{{Poly{}, Poly::constant(1), Poly{}}};
    Section b = section_bracket(E, e1, e2);
    CHECK(b.comp[0].is_zero());
    CHECK(b.comp[1].is_zero());
    CHECK(b.comp[2] == Poly::constant(1)); // [e1, e2] = e3

    Algebroid EP = poisson_cotangent(w.X3d, w.lie_poisson_so3());
    Rng rng(41);
    for (int t = 0; t < 6; ++t) {
        Section s{{random_poly(rng, w.X3d, 2), random_poly(rng, w.X3d, 2), random_poly(rng, w.X3d, 2)}};
        Section s2{{random_poly(rng, w.X3d, 2), random_poly(rng, w.X3d, 2), random_poly(rng, w.X3d, 2)}};
        Section s3{{random_poly(rng, w.X3d, 1), random_poly(rng, w.X3d, 1), random_poly(rng, w.X3d, 1)}};
        // antisymmetry
        Section ss = section_bracket(EP, s, s);
        for (auto& c : ss.comp)
            CHECK(c.is_zero());
        // Jacobi identity of the bracket
        Section j1 = section_bracket(EP, s, section_bracket(EP, s2, s3));
        Section j2 = section_bracket(EP, s2, section_bracket(EP, s3, s));
        Section j3 = section_bracket(EP, s3, section_bracket(EP, s, s2));
        for (int K = 0; K < 3; ++K)
            CHECK((j1.comp[static_cast<size_t>(K)] + j2.comp[static_cast<size_t>(K)] +
                   j3.comp[static_cast<size_t>(K)])
                      .is_zero());
        // Leibniz rule [s, f s'] = f [s, s'] + rho_s(f) s'
        Poly f = random_poly(rng, w.X3d, 2);
        Section fs2{{f * s2.comp[0], f * s2.comp[1], f * s2.comp[2]}};
        Section lhs = section_bracket(EP, s, fs2);
        Section rhs = section_bracket(EP, s, s2);
        Poly rf = anchor_apply(EP, s, f);
        for (int K = 0; K < 3; ++K)
            CHECK(lhs.comp[static_cast<size_t>(K)] ==
                  f * rhs.comp[static_cast<size_t>(K)] + rf * s2.comp[static_cast<size_t>(K)]);
    }
}

TEST_CASE("change_frame preserves axiom verdicts")
{
    World w;
    Algebroid good = poisson_cotangent(w.X2d, [&] {
        std::vector<std::vector<Poly>> P(2, std::vector<Poly>(2));
        P[0][1] = w.P("X1");
        P[1][0] = -P[0][1];
        return P;
    }());
    Algebroid bad = perturbed_so3();

    std::vector<std::vector<Poly>> B2(2, std::vector<Poly>(2)), Binv2(2, std::vector<Poly>(2));
    B2[0][0] = B2[1][1] = Poly::constant(1);
    B2[0][1] = w.P("X2^2");
    Binv2[0][0] = Binv2[1][1] = Poly::constant(1);
    Binv2[0][1] = w.P("-X2^2");
    CHECK(verify_axioms(change_frame(good, FrameChange(good, B2, Binv2))).ok());

    std::vector<std::vector<Poly>> B3(3, std::vector<Poly>(3)), Binv3(3, std::vector<Poly>(3));
    for (int i = 0; i < 3; ++i)
        B3[static_cast<size_t>(i)][static_cast<size_t>(i)] = Binv3[static_cast<size_t>(i)][static_cast<size_t>(i)] =
            Poly::constant(1);
    B3[1][2] = Poly::constant(3);
    Binv3[1][2] = Poly::constant(-3);
    CHECK(!verify_axioms(change_frame(bad, FrameChange(bad, B3, Binv3))).ok());
}
