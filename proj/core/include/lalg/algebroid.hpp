#pragma once

#include "lalg/parser.hpp"
#include "lalg/poly.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace lalg {

/// Lie algebroid in a single polynomial chart: base coordinates, a frame
/// b_I of the bundle, anchor components rho^i_I and structure functions
/// C^I_JK with [b_I, b_J] = C^K_IJ b_K. Antisymmetry of C in the lower
/// pair is structural: only J < K is stored, C^I_KJ reads as -C^I_JK and
/// C^I_JJ as 0.
class Algebroid {
  public:
    Algebroid(std::vector<VarId> base, std::vector<std::string> frame);

    int dim() const { return static_cast<int>(base_.size()); }
    int rank() const { return static_cast<int>(frame_.size()); }
    const std::vector<VarId>& base() const { return base_; }
    const std::vector<std::string>& frame() const { return frame_; }
    const std::string& frame_name(int I) const { return frame_.at(static_cast<size_t>(I)); }

    /// rho^i_I; entries must use base coordinates only.
    void set_anchor(int I, int i, Poly p);
    const Poly& anchor(int I, int i) const;

    /// C^I_JK for J != K; any order, sign handled.
    void set_structure(int I, int J, int K, Poly p);
    Poly structure(int I, int J, int K) const;

    bool operator==(const Algebroid& o) const = default;

  private:
    std::vector<VarId> base_;
    std::vector<std::string> frame_;
    std::vector<std::vector<Poly>> anchor_;       // [I][i]
    std::map<std::tuple<int, int, int>, Poly> c_; // key (I,J,K), J<K, nonzero only
};

/// Change of coframe b^I = B^I_J btilde^J with an explicit polynomial
/// inverse; B.B_inv = 1 is validated at construction.
struct FrameChange {
    FrameChange(const Algebroid& E, std::vector<std::vector<Poly>> B_, std::vector<std::vector<Poly>> B_inv_);
    std::vector<std::vector<Poly>> B;     // B[I][J]
    std::vector<std::vector<Poly>> B_inv; // B_inv[I][J]
};

/// Section s = s^I b_I with polynomial components over the base chart.
struct Section {
    std::vector<Poly> comp;
    int rank() const { return static_cast<int>(comp.size()); }
};

struct AxiomWitness {
    std::vector<int> indices; // (I,J,i) for anchor, (I,J,K,L) for jacobi
    Poly defect;
};

struct AxiomReport {
    bool anchor_compat = true;
    bool jacobi = true;
    std::vector<AxiomWitness> anchor_witnesses;
    std::vector<AxiomWitness> jacobi_witnesses;
    bool ok() const { return anchor_compat && jacobi; }
};

/// Coordinate-formula route: anchor compatibility
///   rho^j_I rho^i_J,j - rho^j_J rho^i_I,j - rho^i_K C^K_IJ = 0
/// and the Jacobi condition
///   sum_cyc(I,J,K) [ rho^m_I C^L_JK,m + C^L_IM C^M_JK ] = 0.
AxiomReport verify_axioms(const Algebroid& E);

/// Same verdicts obtained as d(d X^i) = 0 and d(d b^I) = 0 in the exterior
/// algebra; kept as an independent route (implemented in eform.cpp).
AxiomReport verify_axioms_via_d2(const Algebroid& E);

struct PoissonReport {
    bool jacobi = true;
    std::vector<AxiomWitness> witnesses; // indices (i,j,k)
};

/// Schouten condition: for all i<j<k,
///   sum_s P^{is} d_s P^{jk} + P^{js} d_s P^{ki} + P^{ks} d_s P^{ij} = 0.
PoissonReport jacobi_poisson(const std::vector<VarId>& coords, const std::vector<std::vector<Poly>>& P);

/// Bundle of Lie algebras over a point-like chart (no base coordinates):
/// constant antisymmetric structure table, zero anchor.
Algebroid lie_algebra(std::vector<std::string> frame, const std::map<std::tuple<int, int, int>, Rat>& C);

/// so(3): C^I_JK = epsilon_IJK.
Algebroid so3();

/// Tangent bundle in a coordinate chart: rho = id, C = 0; coframe names
/// are "d<coord>".
Algebroid tangent_bundle(const std::vector<VarId>& coords, const VarPool& pool);

/// T*M for a Poisson matrix P over `coords`: frame b_I ~ dX^i, anchor
/// rho^i_J = P^{ji}, structure C^I_JK = P^{jk},_i. Throws NotAntisymmetric.
Algebroid poisson_cotangent(const std::vector<VarId>& coords, const std::vector<std::vector<Poly>>& P,
                            const std::string& frame_prefix = "e");

/// Exterior sum E1 [+] E2 over the product chart: block anchor and
/// structure, mixed brackets zero. Base coordinates and frame names must
/// be disjoint.
Algebroid exterior_sum(const Algebroid& E1, const Algebroid& E2);

/// Transported algebroid in the new coframe btilde^J:
///   rhotilde^i_J = B^I_J rho^i_I
///   Ctilde^N_JK = (B^-1)^N_M [ B^I_J B^L_K C^M_IL
///                              + B^I_J rho^m_I B^M_K,m - B^L_K rho^m_L B^M_J,m ].
Algebroid change_frame(const Algebroid& E, const FrameChange& F);

/// [s,s']^K = s^I s'^J C^K_IJ + rho^m_I s^I d_m s'^K - rho^m_J s'^J d_m s^K.
Section section_bracket(const Algebroid& E, const Section& s, const Section& t);

/// rho(s) applied to a function on the base.
Poly anchor_apply(const Algebroid& E, const Section& s, const Poly& f);

} // namespace lalg
