#pragma once

#include "lalg/algebroid.hpp"

#include <map>
#include <string>
#include <vector>

namespace lalg {

/// Coframe index tuple, strictly increasing; the empty tuple marks the
/// scalar (degree 0) part.
using IndexTuple = std::vector<int>;

/// E-form: sum of terms coeff * b^{I1} ^ ... ^ b^{Ip} with Poly
/// coefficients over the algebroid's chart. Mixed degrees may coexist in
/// one container; each stored term is homogeneous.
class EForm {
  public:
    explicit EForm(const Algebroid& alg) : alg_(&alg) {}
    static EForm scalar(const Algebroid& alg, Poly f);
    static EForm coframe(const Algebroid& alg, int I); // b^I

    const Algebroid& algebroid() const { return *alg_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const;
    int max_degree() const; // -1 when zero
    const std::map<IndexTuple, Poly>& terms() const { return terms_; }
    Poly coefficient(const IndexTuple& t) const;

    void add_term(const IndexTuple& t, const Poly& c); // canonicalizes nothing: t must be sorted strictly
    /// Accumulate c * b^{t} for an arbitrary tuple, applying the Koszul
    /// sign of the sort; zero when an index repeats.
    void add_term_signed(IndexTuple t, Poly c);

    EForm operator-() const;
    EForm& operator+=(const EForm& o);
    EForm& operator-=(const EForm& o);
    friend EForm operator+(EForm a, const EForm& b) { return a += b; }
    friend EForm operator-(EForm a, const EForm& b) { return a -= b; }
    EForm operator*(const Poly& f) const;
    bool operator==(const EForm& o) const;

    friend EForm wedge(const EForm& a, const EForm& b);

    /// Cartan differential of the algebroid: d f = f,_i rho^i_I b^I on
    /// scalars, d b^I = -1/2 C^I_JK b^J ^ b^K, extended as a graded
    /// derivation. Variables outside the chart are treated as constants.
    EForm differential() const;

    /// Interior product; throws DegreeZero if a degree-0 term is present.
    EForm contract(const Section& s) const;

    /// Cartan magic formula L_s = d i_s + i_s d (valid in degree 0 too).
    EForm lie_derivative(const Section& s) const;

    std::string print(const VarPool& pool) const;

  private:
    EForm contract_unchecked(const Section& s) const;

    const Algebroid* alg_;
    std::map<IndexTuple, Poly> terms_;
};

EForm wedge(const EForm& a, const EForm& b);

/// Parse the printer's syntax: sum of `poly` and `(poly)*f1^f2^...` and
/// `f1^f2` terms, frame names as in the algebroid.
EForm parse_eform(std::string_view text, const Algebroid& alg, const VarPool& pool);

} // namespace lalg
