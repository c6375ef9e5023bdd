#pragma once

#include "lalg/eform.hpp"
#include "lalg/rng.hpp"

#include <optional>
#include <vector>

namespace lalg {

/// Vector bundle map phi: E1 -> E2, given by the base map X^i(x) and the
/// pulled-back coframe images A^I = Phi(b^I), degree-1 forms over E1.
struct BundleMap {
    BundleMap(const Algebroid& source, const Algebroid& target, std::vector<Poly> phi0,
              std::vector<EForm> A);

    const Algebroid* source;
    const Algebroid* target;
    std::vector<Poly> phi0; // n2 polynomials in the source chart
    std::vector<EForm> A;   // r2 one-forms over the source

    /// X^i -> X^i(x) substitution used by every pullback.
    std::map<VarId, Poly> base_substitution() const;
};

struct Curvature {
    std::vector<EForm> F_base;  // F^i = d1 X^i - rho^i_I A^I, degree 1
    std::vector<EForm> F_frame; // F^I = d1 A^I + 1/2 C^I_JK A^J ^ A^K, degree 2
    bool all_zero() const;
};

/// Phi on E2-forms: coefficients composed with phi0, b^I -> A^I.
EForm pullback(const BundleMap& phi, const EForm& omega);

Curvature curvature(const BundleMap& phi);

/// F_phi = d1 Phi - Phi d2 applied to omega.
EForm f_phi(const BundleMap& phi, const EForm& omega);

struct MorphismReport {
    bool is_morphism = false;     // F-based verdict
    bool chain_spot_check = false; // d1 Phi = Phi d2 on sampled forms
    bool consistent = false;      // the two verdicts agree
    std::optional<std::string> witness; // first nonzero curvature component
    std::uint64_t seed = 0;
};

/// Morphism decision on generators (F^i, F^I all zero), plus a seeded
/// spot-check of the chain property on random forms of degree <= 2.
MorphismReport is_morphism(const BundleMap& phi, std::uint64_t seed = 0, int random_forms = 10,
                           const VarPool* pool = nullptr);

/// Phi^gra over the exterior sum E = E1 [+] E2 (E1 coframes first):
/// splits each term by index membership, pulls the E2 part back, wedges.
EForm graph_pullback(const BundleMap& phi, const Algebroid& sum, const EForm& omega);

/// ^EPhi = P1 . Phi^gra : a projector of Omega_E onto im P1.
EForm e_phi(const BundleMap& phi, const Algebroid& sum, const EForm& omega);

/// ^EF_phi = [^Ed, ^EPhi] applied to omega.
EForm e_f_phi(const BundleMap& phi, const Algebroid& sum, const EForm& omega);

/// Connection coefficients Gamma^I_{iJ} on the target, polynomial in the
/// target chart.
struct Connection {
    // gamma[I][i][J]
    std::vector<std::vector<std::vector<Poly>>> gamma;
    static Connection zero(const Algebroid& target);
};

/// F^I_(Gamma) = F^I + Gamma^I_{iJ} F^i ^ A^J; F^i unchanged.
Curvature f_gamma(const BundleMap& phi, const Connection& gamma);

struct PhiRelatedReport {
    bool anchor_ok = false;                 // rho2 . phi = (phi0)_* . rho1, i.e. F^i = 0
    std::vector<bool> pair_related;         // phi . s1 = s2 . phi0 per supplied pair
    std::vector<std::vector<bool>> bracket_ok; // for related pairs i<j
    bool related = false;                   // anchor_ok and all brackets of related pairs
};

PhiRelatedReport phi_related(const BundleMap& phi,
                             const std::vector<std::pair<Section, Section>>& pairs);

/// Random degree-1 coefficient data for test maps: phi0 and A entries
/// drawn over the source chart.
BundleMap random_bundle_map(Rng& rng, const Algebroid& source, const Algebroid& target, int degree);

/// Random E-form over `alg` with terms of degree <= max_degree and
/// coefficients over `coord_vars`.
EForm random_eform(Rng& rng, const Algebroid& alg, int max_degree, int coeff_degree);

} // namespace lalg
