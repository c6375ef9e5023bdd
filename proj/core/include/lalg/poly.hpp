#pragma once

#include "lalg/rational.hpp"
#include "lalg/variables.hpp"

#include <map>
#include <set>
#include <vector>

namespace lalg {

/// Exponent vector of a monomial: (variable id, exponent > 0) pairs sorted
/// by variable id. The empty vector is the monomial 1.
class Monomial {
  public:
    Monomial() = default;
    static Monomial var(VarId v, int exp = 1);

    int degree() const;
    int exponent(VarId v) const;
    bool is_one() const { return factors_.empty(); }
    const std::vector<std::pair<VarId, int>>& factors() const { return factors_; }

    Monomial operator*(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

    /// Graded-lex: higher total degree first; ties broken by the earlier
    /// variable (declaration order) carrying the higher exponent.
    static bool graded_lex_less(const Monomial& a, const Monomial& b);

  private:
    std::vector<std::pair<VarId, int>> factors_;
};

struct MonomialDesc {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        return Monomial::graded_lex_less(b, a); // leading term first
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Canonical form: no zero coefficients, terms ordered graded-lex descending.
/// Two polynomials are equal iff their term maps are identical.
class Poly {
  public:
    using TermMap = std::map<Monomial, Rat, MonomialDesc>;

    Poly() = default; // zero
    static Poly constant(Rat c);
    static Poly constant(long n) { return constant(Rat(n)); }
    static Poly variable(VarId v);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const; // 0 for the zero polynomial
    int total_degree() const;   // -1 for zero
    const TermMap& terms() const { return terms_; }
    std::set<VarId> vars() const;
    bool depends_on(VarId v) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly operator*(const Rat& c) const;
    friend Poly operator*(const Rat& c, const Poly& p) { return p * c; }
    Poly pow(int e) const; // e >= 0

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    Poly derivative(VarId v) const;

    /// Polynomial composition: variables in `assignment` are replaced,
    /// everything else passes through.
    Poly substituted(const std::map<VarId, Poly>& assignment) const;

    /// Exact evaluation; every variable of the polynomial must be assigned.
    Rat eval(const std::map<VarId, Rat>& point) const;

    void add_term(const Monomial& m, const Rat& c); // accumulate, drop zeros

  private:
    TermMap terms_;
};

} // namespace lalg
