#pragma once

#include "lalg/morphism.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lalg {

class FieldExpr;
using FExpr = std::shared_ptr<const FieldExpr>;

/// Jet-level expression in the unevaluated fields X^i(x), A^I(x).
/// Leaves:
///   Jet(p)    — a polynomial in source and target coordinates, read as
///               p(x, X(x)); the field X^i itself is Jet(X^i)
///   FieldA(I) — the 1-form field A^I
///   Const(w)  — a fixed form over the source algebroid
/// Nodes: Sum, Wedge (0-forms multiply), D1 (source differential; on a
/// composed jet scalar this is the total derivative), Contract with a
/// fixed section of the source.
class FieldExpr {
  public:
    enum class Kind { Jet, FieldA, Const, Sum, Wedge, D1, Contract };

    Kind kind;
    Poly jet;                // Jet
    int index = -1;          // FieldA
    std::optional<EForm> cform; // Const
    std::vector<FExpr> kids; // Sum / Wedge(2) / D1(1) / Contract(1)
    Section section;         // Contract

    static FExpr make_jet(Poly p);
    static FExpr make_field_A(int I);
    static FExpr make_const(EForm w);
    static FExpr make_sum(std::vector<FExpr> kids);
    static FExpr make_wedge(FExpr a, FExpr b);
    static FExpr make_d1(FExpr e);
    static FExpr make_contract(Section s, FExpr e);

    bool is_zero_leaf() const { return kind == Kind::Jet && jet.is_zero(); }
};

inline FExpr fx_zero() { return FieldExpr::make_jet(Poly{}); }
inline FExpr operator+(FExpr a, FExpr b) { return FieldExpr::make_sum({std::move(a), std::move(b)}); }
FExpr operator-(FExpr a, FExpr b);
inline FExpr operator*(FExpr a, FExpr b) { return FieldExpr::make_wedge(std::move(a), std::move(b)); }

/// Tangent vector on field space: the variations of X^i and A^I.
struct VariationSpec {
    std::vector<FExpr> deltaX; // n2 entries, form degree 0
    std::vector<FExpr> deltaA; // r2 entries, form degree 1
    std::string frame;         // coframe tag the formulas were written in
};

/// Field shape a jet expression refers to (the phi-template).
struct FieldShape {
    const Algebroid* source;
    const Algebroid* target;
};

/// Derivation extension of a variation: Jet scalars vary through their
/// X-dependence by the chain rule, A-fields by deltaA, d1 and contractions
/// commute with the variation, products obey the ungraded Leibniz rule.
FExpr vary(const FExpr& e, const VariationSpec& v, const FieldShape& shape);

/// Evaluate on a concrete field configuration. Jet scalars compose with
/// X = X(x); d1 is applied after composition (total derivative).
EForm instantiate(const FExpr& e, const BundleMap& fields);

struct IdentityReport {
    bool pass = true;
    int trials = 0;
    std::uint64_t seed = 0;
    std::optional<std::string> witness; // print of the first nonzero instantiation
    std::optional<int> failing_trial;
};

/// Exact randomized identity test: instantiate on `trials` seeded random
/// polynomial configurations of the fields; pass iff every instantiation
/// is the zero form. Each trial is an exact polynomial-zero check.
IdentityReport identity_check(const FExpr& e, const FieldShape& shape, int trials, int degree,
                              std::uint64_t seed, const VarPool* pool = nullptr);

/// Sum of wedges helper used by the gauge/psm builders.
FExpr fexpr_sum(std::vector<FExpr> kids);

/// F^i and F^I as jet expressions over the given shape.
FExpr curvature_base_expr(const FieldShape& shape, int i);
FExpr curvature_frame_expr(const FieldShape& shape, int I);

} // namespace lalg
