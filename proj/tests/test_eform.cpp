#include "doctest.h"

#include "lalg/eform.hpp"
#include "lalg/morphism.hpp"
#include "lalg/rng.hpp"

using namespace lalg;

namespace {

struct World {
    VarPool pool;
    std::vector<VarId> X;
    World()
    {
        for (int i = 1; i <= 3; ++i)
            X.push_back(pool.declare("X" + std::to_string(i), VarKind::TargetCoord));
    }
    Poly P(const std::string& s) { return parse_poly(s, pool); }
    std::vector<std::vector<Poly>> lie_poisson_so3()
    {
        std::vector<std::vector<Poly>> P(3, std::vector<Poly>(3));
        P[0][1] = Poly::variable(X[2]);
        P[1][0] = -P[0][1];
        P[1][2] = Poly::variable(X[0]);
        P[2][1] = -P[1][2];
        P[2][0] = Poly::variable(X[1]);
        P[0][2] = -P[2][0];
        return P;
    }
};

} // namespace

TEST_CASE("wedge antisymmetry and bilinearity")
{
    Algebroid E = so3();
    EForm b1 = EForm::coframe(E, 0), b2 = EForm::coframe(E, 1), b3 = EForm::coframe(E, 2);
    CHECK(wedge(b1, b2) == -wedge(b2, b1));
    CHECK(wedge(b1, b1).is_zero());
    World w;
    Algebroid EP = poisson_cotangent(w.X, w.lie_poisson_so3());
    EForm e1 = EForm::coframe(EP, 0) * w.P("X1");
    EForm e23 = wedge(EForm::coframe(EP, 1), EForm::coframe(EP, 2));
    EForm res = wedge(e1, e23);
    CHECK(res.coefficient({0, 1, 2}) == w.P("X1"));
}

TEST_CASE("graded commutativity and associativity on random forms")
{
    World w;
    Algebroid EP = poisson_cotangent(w.X, w.lie_poisson_so3());
    Rng rng(3);
    for (int t = 0; t < 15; ++t) {
        EForm a = random_eform(rng, EP, 2, 1);
        EForm b = random_eform(rng, EP, 2, 1);
        EForm c = random_eform(rng, EP, 1, 1);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        if (a.is_homogeneous() && b.is_homogeneous() && !a.is_zero() && !b.is_zero()) {
            int p = a.max_degree(), q = b.max_degree();
            EForm sign = wedge(b, a);
            if ((p * q) % 2)
                sign = -sign;
            CHECK(wedge(a, b) == sign);
        }
    }
}

TEST_CASE("differential on generators")
{
    World w;
    SUBCASE("tangent bundle: d f is the coordinate differential")
    {
        Algebroid T = tangent_bundle(w.X, w.pool);
        EForm df = EForm::scalar(T, w.P("X1^2*X2")).differential();
        CHECK(df.coefficient({0}) == w.P("2*X1*X2"));
        CHECK(df.coefficient({1}) == w.P("X1^2"));
        CHECK(df.coefficient({2}).is_zero());
    }
    SUBCASE("Poisson so(3)*: d X^1 = P^{j1} on frame slot j")
    {
        Algebroid EP = poisson_cotangent(w.X, w.lie_poisson_so3());
        EForm dx1 = EForm::scalar(EP, Poly::variable(w.X[0])).differential();
        // d X^i = rho^i_J b^J with rho^1_J = P^{J1}
        CHECK(dx1.coefficient({0}).is_zero());       // P^{11} = 0
        CHECK(dx1.coefficient({1}) == w.P("-X3"));   // P^{21}
        CHECK(dx1.coefficient({2}) == w.P("X2"));    // P^{31}
    }
    SUBCASE("structure equation d b^I = -1/2 C^I_JK b^J^b^K")
    {
        Algebroid E = so3();
        EForm db1 = EForm::coframe(E, 0).differential();
        CHECK(db1.coefficient({1, 2}) == Poly::constant(-1)); // -C^1_23
    }
}

TEST_CASE("d squares to zero exactly on axiom-passing algebroids")
{
    World w;
    std::vector<Algebroid> corpus;
    corpus.push_back(so3());
    corpus.push_back(tangent_bundle(w.X, w.pool));
    corpus.push_back(poisson_cotangent(w.X, w.lie_poisson_so3()));
    Rng rng(5);
    for (auto& E : corpus)
        for (int t = 0; t < 20; ++t) {
            EForm a = random_eform(rng, E, 3, 2);
            CHECK(a.differential().differential().is_zero());
        }
    // and is detectably nonzero on the perturbed so(3)
    Algebroid bad = so3();
    bad.set_structure(0, 0, 1, Poly::constant(1));
    CHECK(!EForm::coframe(bad, 1).differential().differential().is_zero());
}

TEST_CASE("graded Leibniz rule for d")
{
    World w;
    Algebroid EP = poisson_cotangent(w.X, w.lie_poisson_so3());
    Rng rng(7);
    for (int t = 0; t < 15; ++t) {
        EForm a = random_eform(rng, EP, 2, 1);
        if (!a.is_homogeneous())
            continue;
        EForm b = random_eform(rng, EP, 2, 1);
        int p = std::max(a.max_degree(), 0);
        EForm lhs = wedge(a, b).differential();
        EForm rhs = wedge(a.differential(), b);
        EForm second = wedge(a, b.differential());
        if (p % 2)
            second = -second;
        rhs += second;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("contraction")
{
    Algebroid E = so3();
    Section e1{{Poly::constant(1), Poly{}, Poly{}}};
    Section e2{{Poly{}, Poly::constant(1), Poly{}}};
    EForm b12 = wedge(EForm::coframe(E, 0), EForm::coframe(E, 1));
    CHECK(b12.contract(e1) == EForm::coframe(E, 1));
    CHECK(b12.contract(e2) == -EForm::coframe(E, 0));
    CHECK_THROWS_AS(EForm::scalar(E, Poly::constant(3)).contract(e1), Error);
    // i_s i_s = 0
    Rng rng(9);
    World w;
    Algebroid EP = poisson_cotangent(w.X, w.lie_poisson_so3());
    for (int t = 0; t < 10; ++t) {
        EForm a = random_eform(rng, EP, 3, 1);
        EForm a2(EP);
        for (auto& [tup, c] : a.terms())
            if (tup.size() >= 2)
                a2.add_term(tup, c);
        Section s{{random_poly(rng, w.X, 1), random_poly(rng, w.X, 1), random_poly(rng, w.X, 1)}};
        CHECK(a2.contract(s).contract(s).is_zero());
    }
}

TEST_CASE("E-Lie derivative")
{
    World w;
    Algebroid EP = poisson_cotangent(w.X, w.lie_poisson_so3());
    SUBCASE("L_s X^i = s^I rho^i_I; for s = e1 this is P^{1i}(X)")
    {
        Section e1{{Poly::constant(1), Poly{}, Poly{}}};
        EForm lx2 = EForm::scalar(EP, Poly::variable(w.X[1])).lie_derivative(e1);
        CHECK(lx2.coefficient({}) == w.P("X3")); // P^{12}
        EForm lx3 = EForm::scalar(EP, Poly::variable(w.X[2])).lie_derivative(e1);
        CHECK(lx3.coefficient({}) == w.P("-X2")); // P^{13}
    }
    SUBCASE("rho = 0 kills L_s on functions")
    {
        Algebroid E = so3();
        Section s{{Poly::constant(2), Poly::constant(1), Poly{}}};
        VarId aux = w.pool.declare("c", VarKind::Aux);
        CHECK(EForm::scalar(E, Poly::variable(aux)).lie_derivative(s).is_zero());
    }
    SUBCASE("explicit formula on the coframe")
    {
        Rng rng(11);
        for (int t = 0; t < 8; ++t) {
            Section s{{random_poly(rng, w.X, 2), random_poly(rng, w.X, 2), random_poly(rng, w.X, 2)}};
            for (int I = 0; I < 3; ++I) {
                EForm lhs = EForm::coframe(EP, I).lie_derivative(s);
                EForm rhs(EP);
                for (int J = 0; J < 3; ++J) {
                    // rho_J(s^I) b^J + C^I_JK b^J s^K
                    Poly c;
                    for (int m = 0; m < 3; ++m)
                        c += EP.anchor(J, m) * s.comp[static_cast<size_t>(I)].derivative(w.X[static_cast<size_t>(m)]);
                    for (int K = 0; K < 3; ++K)
                        c += EP.structure(I, J, K) * s.comp[static_cast<size_t>(K)];
                    rhs.add_term({J}, c);
                }
                CHECK(lhs == rhs);
            }
        }
    }
    SUBCASE("[L_s, L_t] = L_[s,t] on random forms")
    {
        Rng rng(13);
        for (int t = 0; t < 6; ++t) {
            Section s{{random_poly(rng, w.X, 1), random_poly(rng, w.X, 1), random_poly(rng, w.X, 1)}};
            Section u{{random_poly(rng, w.X, 1), random_poly(rng, w.X, 1), random_poly(rng, w.X, 1)}};
            EForm a = random_eform(rng, EP, 2, 1);
            EForm lhs = a.lie_derivative(u).lie_derivative(s) - a.lie_derivative(s).lie_derivative(u);
            EForm rhs = a.lie_derivative(section_bracket(EP, s, u));
            CHECK(lhs == rhs);
        }
    }
    SUBCASE("[i_s,[i_t, d]] b^K = i_[s,t] b^K")
    {
        Rng rng(17);
        for (int t = 0; t < 6; ++t) {
            Section s{{random_poly(rng, w.X, 2), random_poly(rng, w.X, 2), random_poly(rng, w.X, 2)}};
            Section u{{random_poly(rng, w.X, 2), random_poly(rng, w.X, 2), random_poly(rng, w.X, 2)}};
            Section su = section_bracket(EP, s, u);
            for (int K = 0; K < 3; ++K) {
                // [i_s, L_u] b^K with L_u = [i_u, d]
                EForm bK = EForm::coframe(EP, K);
                EForm is_lu = bK.lie_derivative(u).contract(s);
                EForm lu_is = EForm::scalar(EP, bK.contract(s).coefficient({})).lie_derivative(u);
                EForm commutator = is_lu - lu_is;
                CHECK(commutator.coefficient({}) == su.comp[static_cast<size_t>(K)]);
            }
        }
    }
}

TEST_CASE("exterior sum differential splits with the grading sign")
{
    World w;
    VarPool& pool = w.pool;
    std::vector<VarId> xs{pool.declare("x1", VarKind::SourceCoord), pool.declare("x2", VarKind::SourceCoord)};
    Algebroid E1 = tangent_bundle(xs, pool);
    Algebroid E2 = poisson_cotangent(w.X, w.lie_poisson_so3());
    Algebroid S = exterior_sum(E1, E2);
    int r1 = E1.rank();

    // embed omega1 (x) omega2 as wedge over the combined frame
    auto embed = [&](const EForm& w1, const EForm& w2) {
        EForm out(S);
        for (auto& [t1, c1] : w1.terms())
            for (auto& [t2, c2] : w2.terms()) {
                IndexTuple t = t1;
                for (int I : t2)
                    t.push_back(I + r1);
                out.add_term(t, c1 * c2);
            }
        return out;
    };
    // d_2 acting on the second factor with the grading sign (-1)^{deg w1}
    Rng rng(19);
    for (int t = 0; t < 10; ++t) {
        EForm w1 = random_eform(rng, E1, 2, 1);
        EForm w2 = random_eform(rng, E2, 2, 1);
        if (!w1.is_homogeneous() || !w2.is_homogeneous())
            continue;
        int p = std::max(w1.max_degree(), 0);
        EForm lhs = embed(w1, w2).differential();
        EForm rhs = embed(w1.differential(), w2);
        EForm second = embed(w1, w2.differential());
        if (p % 2)
            second = -second;
        rhs += second;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("print and parse round-trip")
{
    World w;
    Algebroid EP = poisson_cotangent(w.X, w.lie_poisson_so3());
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        EForm a = random_eform(rng, EP, 3, 2);
        std::string s = a.print(w.pool);
        EForm back = parse_eform(s, EP, w.pool);
        CHECK(back == a);
    }
    EForm mixed(EP);
    mixed.add_term({}, w.P("X1 - 1"));
    mixed.add_term({0, 2}, w.P("-3/2*X2"));
    CHECK(parse_eform(mixed.print(w.pool), EP, w.pool) == mixed);
    CHECK(EForm(EP).print(w.pool) == "0");
}
