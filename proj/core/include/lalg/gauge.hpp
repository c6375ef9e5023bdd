#pragma once

#include "lalg/fieldcalc.hpp"

namespace lalg {

/// Gauge parameter: a p1-projectable section of E1 [+] E2. The E1 part
/// may depend on the source coordinates only (enforced); the E2 part may
/// depend on both source and target coordinates.
struct GaugeParam {
    Section eps1;           // over E1; empty means zero
    std::vector<Poly> eps2; // r2 components, polynomials in (x, X)

    bool vertical() const
    {
        for (auto& c : eps1.comp)
            if (!c.is_zero())
                return false;
        return true;
    }
};

/// A coframe to write the gauge formulas in: the algebroid carrying the
/// structure functions of that frame, and the coframe images A^I as
/// expressions in the underlying fields (identity view: FieldA(I)).
struct CoframeView {
    const Algebroid* alg;
    std::vector<FExpr> A;
    static CoframeView identity(const Algebroid& target);
    /// View through b^I = B^I_J btilde^J: tilde algebroid plus
    /// Atilde^J = (B^-1)^J_K A^K.
    static CoframeView tilde(const Algebroid& tilde_alg, const FrameChange& F, const Algebroid& target);
};

enum class GaugeVariant { Delta0, DeltaCov, DeltaConn };

/// delta X^i in the given coframe view (a 0-form expression).
std::vector<FExpr> gauge_rhs_X(GaugeVariant variant, const FieldShape& shape, const CoframeView& view,
                               const GaugeParam& eps);
/// delta A^I (or delta Atilde^I) in the given coframe view.
std::vector<FExpr> gauge_rhs_A(GaugeVariant variant, const FieldShape& shape, const CoframeView& view,
                               const GaugeParam& eps, const Connection* gamma = nullptr);

/// Naive frame-dependent transformation, vertical parameters only:
///   delta0 X^i = rho^i_I eps^I,  delta0 A^I = d1 eps^I + C^I_JK A^J eps^K.
VariationSpec delta0(const FieldShape& shape, const GaugeParam& eps);

/// Covariant off-shell transformation of a projectable parameter. For
/// vertical parameters: delta X^i = delta0 X^i, delta A^I = delta0 A^I
/// - eps^I,_i F^i; the eps1 part adds -i_{eps1} d1 X^i on coordinates and
/// the -i_{eps1} F^I / transported-parameter terms on A.
VariationSpec delta_cov(const FieldShape& shape, const GaugeParam& eps);

/// Connection extension, vertical parameters:
///   delta A^I = delta0 A^I + Gamma^I_{iJ} F^i eps^J.
VariationSpec delta_conn(const FieldShape& shape, const GaugeParam& eps, const Connection& gamma);

/// Bracket of projectable parameters in the exterior sum:
///   eps1'' = [eps1, eps1']_{E1}
///   eps2''^I = C^I_JK eps^J eps'^K + rho1(eps1)(eps'^I) + rho2(eps2)(eps'^I)
///              - rho1(eps1')(eps^I) - rho2(eps2')(eps^I).
GaugeParam e_bracket(const FieldShape& shape, const GaugeParam& a, const GaugeParam& b);

struct ClosureReport {
    bool pass = true;
    std::uint64_t seed = 0;
    std::vector<std::string> failures; // generator names with nonzero defect
};

/// Defect of [delta_eps, delta_eps'] - delta_[eps,eps'] on every X^i and
/// A^I, decided by exact instantiation on `trials` random field
/// configurations. Delta0 (parameters must be X-independent) is compared
/// against the corollary value -C^I_JK,i F^i eps^J eps'^K; DeltaCov and
/// DeltaConn are compared against zero.
ClosureReport closure_check(const FieldShape& shape, GaugeVariant variant, const GaugeParam& eps,
                            const GaugeParam& eps_p, const Connection* gamma, int trials, int degree,
                            std::uint64_t seed, const VarPool* pool = nullptr);

/// Same check with random vertical parameters drawn per instance.
ClosureReport closure_check_random(const FieldShape& shape, GaugeVariant variant, const Connection* gamma,
                                   int instances, int degree, std::uint64_t seed,
                                   const VarPool* pool = nullptr);

struct FrameDefectReport {
    bool delta0_defect_matches = false; // equals B^I_J,i F^i epstilde^J
    bool delta_cov_defect_zero = false;
    bool curvature_identity = false; // F^I = Phi(B) Ftilde + Phi(B,_i) F^i ^ Atilde
    std::uint64_t seed = 0;
    bool pass() const { return delta0_defect_matches && delta_cov_defect_zero && curvature_identity; }
};

/// Frame-change defect theorems for a vertical parameter given in the
/// tilde frame (eps^I = B^I_J epstilde^J).
FrameDefectReport frame_defect_check(const FieldShape& shape, const FrameChange& F,
                                     const std::vector<Poly>& eps_tilde, int trials, int degree,
                                     std::uint64_t seed, const VarPool* pool = nullptr);

/// Diffeomorphism-type parameter eps_i = <v, A_i> for E1 = T Sigma; phi
/// must be concrete since the parameter is built from its A.
GaugeParam diffeo_param(const BundleMap& phi, const Section& v);

/// (P^sharp x id)(d2 eps) = 0, i.e. (eps_{j,i} - eps_{i,j}) P^{jk} = 0
/// for all i, k (sum over j).
bool gauge_condition_check(const std::vector<VarId>& coords, const std::vector<std::vector<Poly>>& P,
                           const std::vector<Poly>& eps);

/// Torsion criterion for a connection on T*M (frame index identified with
/// the coordinate index): symmetric under swapping the frame label with
/// the base label.
bool connection_torsion_free_cotangent(const Connection& gamma);

/// Random vertical parameter with polynomial components over (x, X).
GaugeParam random_vertical_param(Rng& rng, const FieldShape& shape, int degree, bool x_only = false);

} // namespace lalg
