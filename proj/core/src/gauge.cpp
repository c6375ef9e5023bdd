#include "lalg/gauge.hpp"

#include "lalg/error.hpp"

#include <algorithm>

namespace lalg {

namespace {

void check_param(const FieldShape& shape, const GaugeParam& eps)
{
    if (static_cast<int>(eps.eps2.size()) != shape.target->rank())
        fail(Errc::BadInput, "gauge parameter has wrong rank");
    if (!eps.eps1.comp.empty() && eps.eps1.rank() != shape.source->rank())
        fail(Errc::BadInput, "eps1 has wrong rank");
    std::set<VarId> tgt(shape.target->base().begin(), shape.target->base().end());
    for (auto& c : eps.eps1.comp)
        for (VarId v : c.vars())
            if (tgt.count(v))
                fail(Errc::BadInput, "eps1 must not depend on target coordinates (p1-projectability)");
}

Poly rho1_apply(const FieldShape& shape, const GaugeParam& eps, const Poly& f)
{
    if (eps.eps1.comp.empty())
        return {};
    return anchor_apply(*shape.source, eps.eps1, f);
}

Poly rho2_apply(const FieldShape& shape, const GaugeParam& eps, const Poly& f)
{
    Poly r;
    const Algebroid& E2 = *shape.target;
    for (int J = 0; J < E2.rank(); ++J)
        for (int i = 0; i < E2.dim(); ++i)
            r += eps.eps2.at(static_cast<size_t>(J)) * E2.anchor(J, i) *
                 f.derivative(E2.base()[static_cast<size_t>(i)]);
    return r;
}

std::string frame_tag(const Algebroid& alg)
{
    std::string t;
    for (auto& f : alg.frame()) {
        if (!t.empty())
            t += ",";
        t += f;
    }
    return t;
}

} // namespace

CoframeView CoframeView::identity(const Algebroid& target)
{
    CoframeView v;
    v.alg = &target;
    for (int I = 0; I < target.rank(); ++I)
        v.A.push_back(FieldExpr::make_field_A(I));
    return v;
}

CoframeView CoframeView::tilde(const Algebroid& tilde_alg, const FrameChange& F, const Algebroid& target)
{
    CoframeView v;
    v.alg = &tilde_alg;
    int r = target.rank();
    for (int J = 0; J < r; ++J) {
        std::vector<FExpr> parts;
        for (int K = 0; K < r; ++K) {
            const Poly& binv = F.B_inv[static_cast<size_t>(J)][static_cast<size_t>(K)];
            if (binv.is_zero())
                continue;
            parts.push_back(FieldExpr::make_wedge(FieldExpr::make_jet(binv), FieldExpr::make_field_A(K)));
        }
        v.A.push_back(fexpr_sum(std::move(parts)));
    }
    return v;
}

namespace {

/// F^i = d1 X^i - rho^i_I A^I written in the given view's frame (the
/// value is frame invariant, the expression is not).
FExpr fbase_expr(const FieldShape& shape, const CoframeView& view, int i)
{
    VarId xi = shape.target->base().at(static_cast<size_t>(i));
    std::vector<FExpr> parts;
    parts.push_back(FieldExpr::make_d1(FieldExpr::make_jet(Poly::variable(xi))));
    for (int I = 0; I < view.alg->rank(); ++I) {
        Poly rho = view.alg->anchor(I, i);
        if (rho.is_zero())
            continue;
        parts.push_back(FieldExpr::make_wedge(FieldExpr::make_jet(-rho), view.A[static_cast<size_t>(I)]));
    }
    return fexpr_sum(std::move(parts));
}

/// Frame curvature in the given view: d1 A^I + 1/2 C^I_JK A^J ^ A^K with
/// the view's structure functions and coframe images.
FExpr fframe_expr(const FieldShape& shape, const CoframeView& view, int I)
{
    (void)shape;
    std::vector<FExpr> parts;
    parts.push_back(FieldExpr::make_d1(view.A.at(static_cast<size_t>(I))));
    int r = view.alg->rank();
    for (int J = 0; J < r; ++J)
        for (int K = J + 1; K < r; ++K) {
            Poly c = view.alg->structure(I, J, K);
            if (c.is_zero())
                continue;
            parts.push_back(FieldExpr::make_wedge(
                FieldExpr::make_jet(std::move(c)),
                FieldExpr::make_wedge(view.A[static_cast<size_t>(J)], view.A[static_cast<size_t>(K)])));
        }
    return fexpr_sum(std::move(parts));
}

} // namespace

std::vector<FExpr> gauge_rhs_X(GaugeVariant variant, const FieldShape& shape, const CoframeView& view,
                               const GaugeParam& eps)
{
    check_param(shape, eps);
    const Algebroid& frame_alg = *view.alg;
    std::vector<FExpr> out;
    for (int i = 0; i < shape.target->dim(); ++i) {
        Poly scalar;
        for (int I = 0; I < frame_alg.rank(); ++I)
            scalar += frame_alg.anchor(I, i) * eps.eps2.at(static_cast<size_t>(I));
        std::vector<FExpr> parts;
        parts.push_back(FieldExpr::make_jet(std::move(scalar)));
        if (variant == GaugeVariant::DeltaCov && !eps.vertical()) {
            // rho^i_I (eps2^I - i_{eps1} A^I) - i_{eps1} F^i = rho eps2 - i_{eps1} d1 X^i
            for (int I = 0; I < frame_alg.rank(); ++I) {
                Poly rho = frame_alg.anchor(I, i);
                if (rho.is_zero())
                    continue;
                FExpr term = FieldExpr::make_wedge(
                    FieldExpr::make_jet(-rho),
                    FieldExpr::make_contract(eps.eps1, view.A[static_cast<size_t>(I)]));
                parts.push_back(std::move(term));
            }
            parts.push_back(
                FieldExpr::make_wedge(FieldExpr::make_jet(Poly::constant(-1)),
                                      FieldExpr::make_contract(eps.eps1, fbase_expr(shape, view, i))));
        }
        out.push_back(fexpr_sum(std::move(parts)));
    }
    return out;
}

std::vector<FExpr> gauge_rhs_A(GaugeVariant variant, const FieldShape& shape, const CoframeView& view,
                               const GaugeParam& eps, const Connection* gamma)
{
    check_param(shape, eps);
    if (variant != GaugeVariant::DeltaCov && !eps.vertical())
        fail(Errc::BadInput, "only delta_cov accepts a nonvertical parameter");
    const Algebroid& frame_alg = *view.alg;
    int r = frame_alg.rank();
    int n = shape.target->dim();
    std::vector<FExpr> out;
    for (int I = 0; I < r; ++I) {
        std::vector<FExpr> parts;
        // d1 eps^I (total derivative through X(x))
        parts.push_back(FieldExpr::make_d1(FieldExpr::make_jet(eps.eps2.at(static_cast<size_t>(I)))));
        // C^I_JK A^J eps^K
        for (int J = 0; J < r; ++J)
            for (int K = 0; K < r; ++K) {
                Poly c = frame_alg.structure(I, J, K) * eps.eps2.at(static_cast<size_t>(K));
                if (c.is_zero())
                    continue;
                parts.push_back(
                    FieldExpr::make_wedge(FieldExpr::make_jet(std::move(c)), view.A[static_cast<size_t>(J)]));
            }
        if (variant == GaugeVariant::DeltaCov) {
            // -eps^I,_i F^i
            for (int i = 0; i < n; ++i) {
                Poly di = eps.eps2.at(static_cast<size_t>(I)).derivative(
                    shape.target->base()[static_cast<size_t>(i)]);
                if (di.is_zero())
                    continue;
                parts.push_back(
                    FieldExpr::make_wedge(FieldExpr::make_jet(-di), fbase_expr(shape, view, i)));
            }
            if (!eps.vertical()) {
                // effective parameter shift -i_{eps1} A^I through d1 and C A,
                // and the -i_{eps1} F^I term
                parts.push_back(FieldExpr::make_wedge(
                    FieldExpr::make_jet(Poly::constant(-1)),
                    FieldExpr::make_d1(
                        FieldExpr::make_contract(eps.eps1, view.A[static_cast<size_t>(I)]))));
                for (int J = 0; J < r; ++J)
                    for (int K = 0; K < r; ++K) {
                        Poly c = frame_alg.structure(I, J, K);
                        if (c.is_zero())
                            continue;
                        FExpr iota = FieldExpr::make_contract(eps.eps1, view.A[static_cast<size_t>(K)]);
                        parts.push_back(FieldExpr::make_wedge(
                            FieldExpr::make_jet(-c),
                            FieldExpr::make_wedge(view.A[static_cast<size_t>(J)], std::move(iota))));
                    }
                parts.push_back(
                    FieldExpr::make_wedge(FieldExpr::make_jet(Poly::constant(-1)),
                                          FieldExpr::make_contract(eps.eps1, fframe_expr(shape, view, I))));
            }
        }
        if (variant == GaugeVariant::DeltaConn) {
            if (!gamma)
                fail(Errc::BadInput, "delta_conn requires a connection");
            for (int i = 0; i < n; ++i)
                for (int J = 0; J < r; ++J) {
                    Poly g = gamma->gamma.at(static_cast<size_t>(I)).at(static_cast<size_t>(i)).at(
                                 static_cast<size_t>(J)) *
                             eps.eps2.at(static_cast<size_t>(J));
                    if (g.is_zero())
                        continue;
                    parts.push_back(FieldExpr::make_wedge(FieldExpr::make_jet(std::move(g)),
                                                          fbase_expr(shape, view, i)));
                }
        }
        out.push_back(fexpr_sum(std::move(parts)));
    }
    return out;
}

VariationSpec delta0(const FieldShape& shape, const GaugeParam& eps)
{
    if (!eps.vertical())
        fail(Errc::BadInput, "delta0 requires a vertical parameter");
    CoframeView view = CoframeView::identity(*shape.target);
    VariationSpec v;
    v.deltaX = gauge_rhs_X(GaugeVariant::Delta0, shape, view, eps);
    v.deltaA = gauge_rhs_A(GaugeVariant::Delta0, shape, view, eps);
    v.frame = frame_tag(*shape.target);
    return v;
}

VariationSpec delta_cov(const FieldShape& shape, const GaugeParam& eps)
{
    CoframeView view = CoframeView::identity(*shape.target);
    VariationSpec v;
    v.deltaX = gauge_rhs_X(GaugeVariant::DeltaCov, shape, view, eps);
    v.deltaA = gauge_rhs_A(GaugeVariant::DeltaCov, shape, view, eps);
    v.frame = frame_tag(*shape.target);
    return v;
}

VariationSpec delta_conn(const FieldShape& shape, const GaugeParam& eps, const Connection& gamma)
{
    if (!eps.vertical())
        fail(Errc::BadInput, "delta_conn requires a vertical parameter");
    CoframeView view = CoframeView::identity(*shape.target);
    VariationSpec v;
    v.deltaX = gauge_rhs_X(GaugeVariant::DeltaConn, shape, view, eps);
    v.deltaA = gauge_rhs_A(GaugeVariant::DeltaConn, shape, view, eps, &gamma);
    v.frame = frame_tag(*shape.target);
    return v;
}

GaugeParam e_bracket(const FieldShape& shape, const GaugeParam& a, const GaugeParam& b)
{
    check_param(shape, a);
    check_param(shape, b);
    GaugeParam out;
    if (!a.eps1.comp.empty() || !b.eps1.comp.empty()) {
        Section z;
        z.comp.assign(static_cast<size_t>(shape.source->rank()), Poly{});
        const Section& a1 = a.eps1.comp.empty() ? z : a.eps1;
        const Section& b1 = b.eps1.comp.empty() ? z : b.eps1;
        out.eps1 = section_bracket(*shape.source, a1, b1);
    }
    const Algebroid& E2 = *shape.target;
    for (int I = 0; I < E2.rank(); ++I) {
        Poly c;
        for (int J = 0; J < E2.rank(); ++J)
            for (int K = 0; K < E2.rank(); ++K)
                c += E2.structure(I, J, K) * a.eps2.at(static_cast<size_t>(J)) *
                     b.eps2.at(static_cast<size_t>(K));
        c += rho1_apply(shape, a, b.eps2.at(static_cast<size_t>(I)));
        c += rho2_apply(shape, a, b.eps2.at(static_cast<size_t>(I)));
        c -= rho1_apply(shape, b, a.eps2.at(static_cast<size_t>(I)));
        c -= rho2_apply(shape, b, a.eps2.at(static_cast<size_t>(I)));
        out.eps2.push_back(std::move(c));
    }
    return out;
}

namespace {

VariationSpec build_spec(GaugeVariant variant, const FieldShape& shape, const GaugeParam& eps,
                         const Connection* gamma)
{
    switch (variant) {
    case GaugeVariant::Delta0:
        return delta0(shape, eps);
    case GaugeVariant::DeltaCov:
        return delta_cov(shape, eps);
    case GaugeVariant::DeltaConn:
        return delta_conn(shape, eps, *gamma);
    }
    fail(Errc::BadInput, "unknown variant");
}

struct DefectExprs {
    std::vector<FExpr> on_X;
    std::vector<FExpr> on_A;
};

DefectExprs closure_defect(const FieldShape& shape, GaugeVariant variant, const GaugeParam& eps,
                           const GaugeParam& eps_p, const Connection* gamma)
{
    VariationSpec va = build_spec(variant, shape, eps, gamma);
    VariationSpec vb = build_spec(variant, shape, eps_p, gamma);
    GaugeParam br = e_bracket(shape, eps, eps_p);
    VariationSpec vbr = build_spec(variant, shape, br, gamma);
    // [delta_eps, delta_eps'] g = vary(vary(g, eps'), eps) - vary(vary(g, eps), eps')
    auto defect = [&](const FExpr& g) {
        FExpr ab = vary(vary(g, vb, shape), va, shape);
        FExpr ba = vary(vary(g, va, shape), vb, shape);
        FExpr com = ab - ba;
        FExpr lin = vary(g, vbr, shape);
        return com - lin;
    };
    DefectExprs out;
    for (int i = 0; i < shape.target->dim(); ++i)
        out.on_X.push_back(defect(FieldExpr::make_jet(
            Poly::variable(shape.target->base()[static_cast<size_t>(i)]))));
    for (int I = 0; I < shape.target->rank(); ++I)
        out.on_A.push_back(defect(FieldExpr::make_field_A(I)));

    if (variant == GaugeVariant::Delta0) {
        // corollary value: defect on A^I must equal -C^I_JK,i F^i eps^J eps'^K
        for (int I = 0; I < shape.target->rank(); ++I) {
            std::vector<FExpr> parts{out.on_A[static_cast<size_t>(I)]};
            for (int i = 0; i < shape.target->dim(); ++i) {
                Poly c;
                for (int J = 0; J < shape.target->rank(); ++J)
                    for (int K = 0; K < shape.target->rank(); ++K)
                        c += shape.target->structure(I, J, K)
                                 .derivative(shape.target->base()[static_cast<size_t>(i)]) *
                             eps.eps2.at(static_cast<size_t>(J)) * eps_p.eps2.at(static_cast<size_t>(K));
                if (c.is_zero())
                    continue;
                parts.push_back(
                    FieldExpr::make_wedge(FieldExpr::make_jet(std::move(c)), curvature_base_expr(shape, i)));
            }
            out.on_A[static_cast<size_t>(I)] = fexpr_sum(std::move(parts));
        }
    }
    return out;
}

} // namespace

ClosureReport closure_check(const FieldShape& shape, GaugeVariant variant, const GaugeParam& eps,
                            const GaugeParam& eps_p, const Connection* gamma, int trials, int degree,
                            std::uint64_t seed, const VarPool* pool)
{
    if (variant == GaugeVariant::Delta0) {
        std::set<VarId> tgt(shape.target->base().begin(), shape.target->base().end());
        for (auto* p : {&eps, &eps_p})
            for (auto& c : p->eps2)
                for (VarId v : c.vars())
                    if (tgt.count(v))
                        fail(Errc::BadInput,
                             "corollary form of closure_check(delta0) needs X-independent parameters");
    }
    ClosureReport rep;
    rep.seed = seed;
    DefectExprs d = closure_defect(shape, variant, eps, eps_p, gamma);
    for (int i = 0; i < static_cast<int>(d.on_X.size()); ++i) {
        auto r = identity_check(d.on_X[static_cast<size_t>(i)], shape, trials, degree, seed, pool);
        if (!r.pass) {
            rep.pass = false;
            rep.failures.push_back("X^" + std::to_string(i + 1) +
                                   (r.witness ? " : " + *r.witness : std::string{}));
        }
    }
    for (int I = 0; I < static_cast<int>(d.on_A.size()); ++I) {
        auto r = identity_check(d.on_A[static_cast<size_t>(I)], shape, trials, degree, seed, pool);
        if (!r.pass) {
            rep.pass = false;
            rep.failures.push_back("A^" + std::to_string(I + 1) +
                                   (r.witness ? " : " + *r.witness : std::string{}));
        }
    }
    return rep;
}

GaugeParam random_vertical_param(Rng& rng, const FieldShape& shape, int degree, bool x_only)
{
    GaugeParam eps;
    std::vector<VarId> vars = shape.source->base();
    if (!x_only)
        vars.insert(vars.end(), shape.target->base().begin(), shape.target->base().end());
    for (int I = 0; I < shape.target->rank(); ++I)
        eps.eps2.push_back(random_poly(rng, vars, degree));
    return eps;
}

ClosureReport closure_check_random(const FieldShape& shape, GaugeVariant variant, const Connection* gamma,
                                   int instances, int degree, std::uint64_t seed, const VarPool* pool)
{
    ClosureReport rep;
    rep.seed = seed;
    bool x_only = (variant == GaugeVariant::Delta0) || (variant == GaugeVariant::DeltaConn);
    for (int t = 0; t < instances; ++t) {
        Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
        GaugeParam eps = random_vertical_param(rng, shape, degree, x_only);
        GaugeParam eps_p = random_vertical_param(rng, shape, degree, x_only);
        DefectExprs d = closure_defect(shape, variant, eps, eps_p, gamma);
        BundleMap fields = random_bundle_map(rng, *shape.source, *shape.target, degree);
        for (int i = 0; i < static_cast<int>(d.on_X.size()); ++i) {
            EForm w = instantiate(d.on_X[static_cast<size_t>(i)], fields);
            if (!w.is_zero()) {
                rep.pass = false;
                rep.failures.push_back("instance " + std::to_string(t) + " X^" + std::to_string(i + 1) +
                                       (pool ? " : " + w.print(*pool) : std::string{}));
            }
        }
        for (int I = 0; I < static_cast<int>(d.on_A.size()); ++I) {
            EForm w = instantiate(d.on_A[static_cast<size_t>(I)], fields);
            if (!w.is_zero()) {
                rep.pass = false;
                rep.failures.push_back("instance " + std::to_string(t) + " A^" + std::to_string(I + 1) +
                                       (pool ? " : " + w.print(*pool) : std::string{}));
            }
        }
    }
    return rep;
}

FrameDefectReport frame_defect_check(const FieldShape& shape, const FrameChange& F,
                                     const std::vector<Poly>& eps_tilde, int trials, int degree,
                                     std::uint64_t seed, const VarPool* pool)
{
    const Algebroid& E2 = *shape.target;
    int r = E2.rank();
    if (static_cast<int>(eps_tilde.size()) != r)
        fail(Errc::BadInput, "parameter has wrong rank");
    Algebroid tilde = change_frame(E2, F);
    CoframeView vb = CoframeView::identity(E2);
    CoframeView vt = CoframeView::tilde(tilde, F, E2);

    GaugeParam ep_t; // in the tilde frame
    ep_t.eps2 = eps_tilde;
    GaugeParam ep_b; // eps^I = B^I_J epstilde^J
    for (int I = 0; I < r; ++I) {
        Poly c;
        for (int J = 0; J < r; ++J)
            c += F.B[static_cast<size_t>(I)][static_cast<size_t>(J)] * eps_tilde[static_cast<size_t>(J)];
        ep_b.eps2.push_back(std::move(c));
    }

    FieldShape shape_t{shape.source, &tilde};

    auto transported = [&](GaugeVariant variant) {
        // B^I_J (delta Atilde^J in the tilde frame) + B^I_J,i Atilde^J delta X^i
        std::vector<FExpr> dAt = gauge_rhs_A(variant, shape_t, vt, ep_t);
        std::vector<FExpr> dX = gauge_rhs_X(variant, shape, vb, ep_b);
        std::vector<FExpr> out;
        for (int I = 0; I < r; ++I) {
            std::vector<FExpr> parts;
            for (int J = 0; J < r; ++J) {
                const Poly& b = F.B[static_cast<size_t>(I)][static_cast<size_t>(J)];
                if (!b.is_zero())
                    parts.push_back(
                        FieldExpr::make_wedge(FieldExpr::make_jet(b), dAt[static_cast<size_t>(J)]));
                for (int i = 0; i < E2.dim(); ++i) {
                    Poly bi = F.B[static_cast<size_t>(I)][static_cast<size_t>(J)].derivative(
                        E2.base()[static_cast<size_t>(i)]);
                    if (bi.is_zero())
                        continue;
                    parts.push_back(FieldExpr::make_wedge(
                        FieldExpr::make_jet(std::move(bi)),
                        FieldExpr::make_wedge(vt.A[static_cast<size_t>(J)], dX[static_cast<size_t>(i)])));
                }
            }
            out.push_back(fexpr_sum(std::move(parts)));
        }
        return out;
    };

    auto all_zero = [&](const std::vector<FExpr>& exprs) {
        for (auto& e : exprs) {
            auto rep = identity_check(e, shape, trials, degree, seed, pool);
            if (!rep.pass)
                return false;
        }
        return true;
    };

    FrameDefectReport rep;
    rep.seed = seed;

    {
        // delta0 defect equals B^I_J,i F^i epstilde^J
        std::vector<FExpr> lhs = gauge_rhs_A(GaugeVariant::Delta0, shape, vb, ep_b);
        std::vector<FExpr> tr = transported(GaugeVariant::Delta0);
        std::vector<FExpr> checks;
        for (int I = 0; I < r; ++I) {
            std::vector<FExpr> parts{lhs[static_cast<size_t>(I)],
                                     FieldExpr::make_wedge(FieldExpr::make_jet(Poly::constant(-1)),
                                                           tr[static_cast<size_t>(I)])};
            for (int J = 0; J < r; ++J)
                for (int i = 0; i < E2.dim(); ++i) {
                    Poly c = F.B[static_cast<size_t>(I)][static_cast<size_t>(J)].derivative(
                                 E2.base()[static_cast<size_t>(i)]) *
                             eps_tilde[static_cast<size_t>(J)];
                    if (c.is_zero())
                        continue;
                    parts.push_back(FieldExpr::make_wedge(FieldExpr::make_jet(-c),
                                                          curvature_base_expr(shape, i)));
                }
            checks.push_back(fexpr_sum(std::move(parts)));
        }
        rep.delta0_defect_matches = all_zero(checks);
    }
    {
        std::vector<FExpr> lhs = gauge_rhs_A(GaugeVariant::DeltaCov, shape, vb, ep_b);
        std::vector<FExpr> tr = transported(GaugeVariant::DeltaCov);
        std::vector<FExpr> checks;
        for (int I = 0; I < r; ++I)
            checks.push_back(lhs[static_cast<size_t>(I)] - tr[static_cast<size_t>(I)]);
        rep.delta_cov_defect_zero = all_zero(checks);
    }
    {
        // F^I = Phi(B^I_J) Ftilde^J + Phi(B^I_J,i) F^i ^ Atilde^J
        std::vector<FExpr> checks;
        for (int I = 0; I < r; ++I) {
            std::vector<FExpr> parts{curvature_frame_expr(shape, I)};
            for (int J = 0; J < r; ++J) {
                const Poly& b = F.B[static_cast<size_t>(I)][static_cast<size_t>(J)];
                if (!b.is_zero())
                    parts.push_back(FieldExpr::make_wedge(FieldExpr::make_jet(-b),
                                                          fframe_expr(shape_t, vt, J)));
                for (int i = 0; i < E2.dim(); ++i) {
                    Poly bi = b.derivative(E2.base()[static_cast<size_t>(i)]);
                    if (bi.is_zero())
                        continue;
                    parts.push_back(FieldExpr::make_wedge(
                        FieldExpr::make_jet(-bi),
                        FieldExpr::make_wedge(curvature_base_expr(shape, i), vt.A[static_cast<size_t>(J)])));
                }
            }
            checks.push_back(fexpr_sum(std::move(parts)));
        }
        rep.curvature_identity = all_zero(checks);
    }
    return rep;
}

GaugeParam diffeo_param(const BundleMap& phi, const Section& v)
{
    const Algebroid& E1 = *phi.source;
    // E1 must be a coordinate tangent bundle: rho = id, C = 0
    bool ok = (E1.dim() == E1.rank());
    for (int I = 0; ok && I < E1.rank(); ++I)
        for (int i = 0; ok && i < E1.dim(); ++i) {
            Poly expect = (I == i) ? Poly::constant(1) : Poly{};
            if (!(E1.anchor(I, i) == expect))
                ok = false;
        }
    for (int I = 0; ok && I < E1.rank(); ++I)
        for (int J = 0; ok && J < E1.rank(); ++J)
            for (int K = J + 1; ok && K < E1.rank(); ++K)
                if (!E1.structure(I, J, K).is_zero())
                    ok = false;
    if (!ok)
        fail(Errc::WrongSourceAlgebroid, "diffeo_param requires E1 = T Sigma in a coordinate frame");
    if (v.rank() != E1.rank())
        fail(Errc::BadInput, "vector field has wrong rank");

    GaugeParam eps;
    for (int I = 0; I < phi.target->rank(); ++I) {
        Poly c;
        for (int a = 0; a < E1.rank(); ++a)
            c += phi.A[static_cast<size_t>(I)].coefficient({a}) * v.comp[static_cast<size_t>(a)];
        eps.eps2.push_back(std::move(c));
    }
    return eps;
}

bool gauge_condition_check(const std::vector<VarId>& coords, const std::vector<std::vector<Poly>>& P,
                           const std::vector<Poly>& eps)
{
    size_t n = coords.size();
    if (eps.size() != n)
        fail(Errc::BadInput, "parameter has wrong rank");
    for (auto& e : eps)
        for (VarId v : e.vars())
            if (std::find(coords.begin(), coords.end(), v) == coords.end())
                fail(Errc::BadInput, "parameter must depend on the target coordinates only");
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            Poly s;
            for (size_t j = 0; j < n; ++j)
                s += (eps[j].derivative(coords[i]) - eps[i].derivative(coords[j])) * P[j][k];
            if (!s.is_zero())
                return false;
        }
    return true;
}

bool connection_torsion_free_cotangent(const Connection& gamma)
{
    size_t r = gamma.gamma.size();
    for (size_t I = 0; I < r; ++I) {
        if (gamma.gamma[I].size() != r)
            fail(Errc::BadInput, "torsion criterion needs rank == dim (T*M)");
        for (size_t i = 0; i < r; ++i)
            for (size_t J = 0; J < gamma.gamma[I][i].size(); ++J)
                if (!(gamma.gamma[I][i][J] == gamma.gamma[i][I][J]))
                    return false;
    }
    return true;
}

} // namespace lalg
