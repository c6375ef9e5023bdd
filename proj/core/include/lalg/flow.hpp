#pragma once

#include "lalg/algebroid.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lalg {

/// Polynomial compiled for pointwise double evaluation against a fixed
/// variable list; the single source of truth stays the Poly.
class CompiledPoly {
  public:
    CompiledPoly() = default;
    CompiledPoly(const Poly& p, const std::vector<VarId>& order);
    double eval(const double* point) const;

  private:
    struct Term {
        double coeff;
        std::vector<std::pair<int, int>> powers; // (slot, exponent)
    };
    std::vector<Term> terms_;
};

/// Periodic N x N grid over the torus [0,L)^2 carrying the fields
/// X^i and A^I = A^I_mu dx^mu.
struct GridField {
    int N = 0;
    double L = 1.0;
    std::vector<std::vector<double>> X;                  // [i][N*N]
    std::vector<std::array<std::vector<double>, 2>> A;   // [I][mu][N*N]

    int n2() const { return static_cast<int>(X.size()); }
    int r2() const { return static_cast<int>(A.size()); }
    double h() const { return L / N; }
    static GridField zeros(int N, double L, int n2, int r2);
};

/// Target structure compiled for the grid: evaluators take the point
/// (x1, x2, X^1..X^n).
struct FlowModel {
    FlowModel(const Algebroid& target, const std::vector<Poly>& eps,
              const std::vector<VarId>& sigma_coords,
              const std::vector<std::vector<Poly>>* poisson = nullptr);

    int n2, r2;
    std::vector<std::vector<CompiledPoly>> rho; // [I][i]
    std::vector<std::vector<std::vector<CompiledPoly>>> C; // [I][J][K]
    std::vector<CompiledPoly> eps; // [I]
    std::vector<std::vector<CompiledPoly>> P; // [i][j], PSM only (empty otherwise)
    bool has_poisson() const { return !P.empty(); }
};

struct Residuals {
    double sup_F_base = 0.0;
    double sup_F_frame = 0.0;
};

/// Central-difference field strengths: F^i_mu = d_mu X^i - rho^i_I A^I_mu
/// and F^I_{12} = d_1 A^I_2 - d_2 A^I_1 + C^I_JK A^J_1 A^K_2; sup norms.
Residuals residuals(const GridField& g, const FlowModel& model);

/// Midpoint quadrature of A_i ^ dX^i + 1/2 P^{ij} A_i ^ A_j over the
/// torus; deterministic pairwise summation.
double action_numeric(const GridField& g, const FlowModel& model);

struct FlowConfig {
    double dt = 0.01;
    double T = 1.0;
    int record_every = 1;
};

struct FlowSample {
    double t;
    Residuals res;
    double action;
};

struct FlowResult {
    bool completed = true; // false on blow-up; `state` holds the last good state
    std::vector<FlowSample> trace;
    GridField state;
};

/// RK4 integration of the homotopy flow
///   d_t X^i = rho^i_I eps^I,  d_t A^I = d1 eps^I + C^I_JK A^J eps^K
/// with eps evaluated at (x, X(x,t)) and d1 taken by central differences
/// of the composed grid function.
FlowResult integrate_flow(const GridField& g0, const FlowModel& model, const FlowConfig& cfg);

/// Deterministic pairwise reduction (row-major order).
double pairwise_sum(const std::vector<double>& v);

} // namespace lalg
