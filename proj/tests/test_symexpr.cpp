#include "doctest.h"

#include "lalg/parser.hpp"
#include "lalg/rng.hpp"

using namespace lalg;

namespace {

struct Ctx {
    VarPool pool;
    VarId X1, X2, X3, x1, x2;
    Ctx()
    {
        X1 = pool.declare("X1", VarKind::TargetCoord);
        X2 = pool.declare("X2", VarKind::TargetCoord);
        X3 = pool.declare("X3", VarKind::TargetCoord);
        x1 = pool.declare("x1", VarKind::SourceCoord);
        x2 = pool.declare("x2", VarKind::SourceCoord);
    }
    Poly P(const std::string& s) { return parse_poly(s, pool); }
};

} // namespace

TEST_CASE("parse basics")
{
    Ctx c;
    CHECK(c.P("X3") == Poly::variable(c.X3));
    CHECK(c.P("(X1)^2") == Poly::variable(c.X1) * Poly::variable(c.X1));
    CHECK(c.P("X1*X2 - X2*X1").is_zero());
    CHECK(c.P("1/2 + 1/3") == Poly::constant(Rat(5, 6)));
    CHECK(c.P(" - X1 ^ 2 ") == -c.P("X1^2"));
    CHECK(c.P("2*(X1 + X2)") == c.P("2*X1 + 2*X2"));
}

TEST_CASE("parse errors carry codes and offsets")
{
    Ctx c;
    CHECK_THROWS_AS(c.P("Y1"), Error);
    try {
        c.P("X1 + Y1");
    } catch (const Error& e) {
        CHECK(e.code == Errc::UndeclaredVariable);
        CHECK(e.offset == 5);
    }
    try {
        c.P("X1^-2");
    } catch (const Error& e) {
        CHECK(e.code == Errc::NegativeExponent);
    }
    try {
        c.P("X1 + ");
    } catch (const Error& e) {
        CHECK(e.code == Errc::SyntaxError);
    }
    try {
        c.P("X1 X2");
    } catch (const Error& e) {
        CHECK(e.code == Errc::SyntaxError);
    }
}

TEST_CASE("differentiate")
{
    Ctx c;
    CHECK(c.P("X1^2*X2").derivative(c.X1) == c.P("2*X1*X2"));
    CHECK(c.P("7/3").derivative(c.X1).is_zero());
    CHECK(c.P("X1*X2*X3").derivative(c.X2) == c.P("X1*X3"));
    // mixed partials commute
    Rng rng(7);
    std::vector<VarId> vars{c.X1, c.X2, c.X3};
    for (int t = 0; t < 10; ++t) {
        Poly p = random_poly(rng, vars, 4);
        CHECK(p.derivative(c.X1).derivative(c.X2) == p.derivative(c.X2).derivative(c.X1));
    }
}

TEST_CASE("substitute")
{
    Ctx c;
    CHECK(c.P("X1^2").substituted({{c.X1, c.P("x1 + x2")}}) == c.P("x1^2 + 2*x1*x2 + x2^2"));
    CHECK(c.P("X3").substituted({{c.X3, Poly{}}}).is_zero());
    CHECK(c.P("X1^2").substituted({{c.X1, c.P("x1*x2")}}) == c.P("x1^2*x2^2"));
    // unassigned variables pass through
    CHECK(c.P("X1*X2").substituted({{c.X1, c.P("x1")}}) == c.P("x1*X2"));
}

TEST_CASE("eval_at")
{
    Ctx c;
    CHECK(c.P("X1 + X2").eval({{c.X1, Rat(1, 2)}, {c.X2, Rat(1, 3)}}) == Rat(5, 6));
    CHECK(Poly{}.eval({}) == Rat(0));
    CHECK(c.P("X1^2*X2").eval({{c.X1, Rat(2)}, {c.X2, Rat(3)}}) == Rat(12));
    CHECK_THROWS_AS(c.P("X1*X2").eval({{c.X1, Rat(1)}}), Error);
}

TEST_CASE("is_zero is exact")
{
    Ctx c;
    CHECK(c.P("X1 - X1").is_zero());
    CHECK(c.P("X1*X2 - X2*X1").is_zero());
    CHECK(!c.P("X1^2 - X1").is_zero());
}

TEST_CASE("ring axioms on random polynomials")
{
    Ctx c;
    Rng rng(11);
    std::vector<VarId> vars{c.X1, c.X2, c.x1};
    for (int t = 0; t < 20; ++t) {
        Poly a = random_poly(rng, vars, 3);
        Poly b = random_poly(rng, vars, 3);
        Poly d = random_poly(rng, vars, 3);
        CHECK((a + b) * d == a * d + b * d);
        CHECK((a * b) * d == a * (b * d));
        CHECK(a * b == b * a);
        CHECK(a - a == Poly{});
    }
}

TEST_CASE("substitute then eval equals eval of composition")
{
    Ctx c;
    Rng rng(13);
    std::vector<VarId> outer{c.X1, c.X2};
    std::vector<VarId> inner{c.x1, c.x2};
    for (int t = 0; t < 10; ++t) {
        Poly p = random_poly(rng, outer, 3);
        Poly g1 = random_poly(rng, inner, 2);
        Poly g2 = random_poly(rng, inner, 2);
        std::map<VarId, Rat> pt{{c.x1, rng.coeff()}, {c.x2, rng.coeff()}};
        Rat composed = p.substituted({{c.X1, g1}, {c.X2, g2}}).eval(pt);
        Rat direct = p.eval({{c.X1, g1.eval(pt)}, {c.X2, g2.eval(pt)}});
        CHECK(composed == direct);
    }
}

TEST_CASE("zero polynomial evaluates to zero everywhere")
{
    Ctx c;
    Rng rng(17);
    std::vector<VarId> vars{c.X1, c.X2, c.X3};
    for (int t = 0; t < 5; ++t) {
        Poly p = random_poly(rng, vars, 3);
        Poly z = p - p; // is_zero by construction
        REQUIRE(z.is_zero());
        for (int k = 0; k < 20; ++k) {
            std::map<VarId, Rat> pt;
            for (VarId v : vars)
                pt[v] = rng.coeff();
            CHECK(z.eval(pt) == Rat(0));
        }
    }
}

TEST_CASE("print round-trips and is canonical")
{
    Ctx c;
    Rng rng(23);
    std::vector<VarId> vars{c.X1, c.X2, c.x1};
    for (int t = 0; t < 25; ++t) {
        Poly p = random_poly(rng, vars, 3);
        CHECK(parse_poly(print_poly(p, c.pool), c.pool) == p);
    }
    CHECK(print_poly(Poly{}, c.pool) == "0");
    // graded-lex: higher degree first, then earlier variable dominates
    CHECK(print_poly(c.P("X2 + X1^2 + 1"), c.pool) == "X1^2 + X2 + 1");
    CHECK(print_poly(c.P("X2*X1 - X3"), c.pool) == "X1*X2 - X3");
}
