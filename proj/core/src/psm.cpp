#include "lalg/psm.hpp"

#include "lalg/error.hpp"

namespace lalg {

PsmModel::PsmModel(std::vector<VarId> sigma_coords, std::vector<VarId> target_coords,
                   std::vector<std::vector<Poly>> P, const VarPool& pool)
    : sigma_(std::move(sigma_coords)), coords_(std::move(target_coords)), P_(std::move(P)),
      source_(tangent_bundle(sigma_, pool)), target_(poisson_cotangent(coords_, P_)),
      jacobi_(jacobi_poisson(coords_, P_).jacobi)
{
    if (sigma_.size() != 2)
        fail(Errc::BadInput, "the worldsheet must be two-dimensional");
}

ActionRoutes action_density_routes(const PsmModel& m, const BundleMap& phi)
{
    if (phi.source != &m.source() || phi.target != &m.target())
        fail(Errc::AlgebroidMismatch, "bundle map does not belong to this model");
    const Algebroid& TS = m.source();
    size_t n = m.coords().size();
    auto sub = phi.base_substitution();

    // route 1: A_i ^ d1 X^i + sum_{i<j} P^{ij}(X(x)) A_i ^ A_j
    EForm local(TS);
    for (size_t i = 0; i < n; ++i)
        local += wedge(phi.A[i], EForm::scalar(TS, phi.phi0[i]).differential());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            local += wedge(phi.A[i], phi.A[j]) * m.P()[i][j].substituted(sub);

    // route 2: Alt Phi*(delta) via the Jacobian pullback of dX^i, plus
    // Phi of the E2-form 1/2 P^{ij} b^i ^ b^j
    EForm alt(TS);
    for (size_t i = 0; i < n; ++i) {
        EForm pdx(TS); // phi0^* dX^i = X^i,_mu dx^mu
        for (int mu = 0; mu < TS.dim(); ++mu)
            pdx.add_term({mu}, phi.phi0[i].derivative(TS.base()[static_cast<size_t>(mu)]));
        alt += wedge(phi.A[i], pdx);
    }
    EForm pform(m.target());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            pform.add_term({static_cast<int>(i), static_cast<int>(j)}, m.P()[i][j]);
    alt += pullback(phi, pform);

    // route 3: component pairing <A ^, d phi0> + 1/2 <P . phi0, A ^ A>
    EForm pair(TS);
    {
        Poly c01;
        for (size_t i = 0; i < n; ++i) {
            Poly a0 = phi.A[i].coefficient({0});
            Poly a1 = phi.A[i].coefficient({1});
            Poly x0 = phi.phi0[i].derivative(TS.base()[0]);
            Poly x1 = phi.phi0[i].derivative(TS.base()[1]);
            c01 += a0 * x1 - a1 * x0;
            for (size_t j = 0; j < n; ++j) {
                Poly b0 = phi.A[j].coefficient({0});
                Poly b1 = phi.A[j].coefficient({1});
                c01 += m.P()[i][j].substituted(sub) * (a0 * b1 - a1 * b0) * Rat(1, 2);
            }
        }
        pair.add_term({0, 1}, c01);
    }

    return {std::move(local), std::move(alt), std::move(pair)};
}

EForm action_density(const PsmModel& m, const BundleMap& phi)
{
    ActionRoutes r = action_density_routes(m, phi);
    if (!r.agree())
        fail(Errc::BadInput, "action construction routes disagree");
    return r.local;
}

Curvature euler_lagrange(const PsmModel& m, const BundleMap& phi)
{
    Curvature F = curvature(phi);
    const Algebroid& TS = m.source();
    size_t n = m.coords().size();
    auto sub = phi.base_substitution();
    for (size_t i = 0; i < n; ++i) {
        // dS/dA_i = dX^i + P^{ij} A_j
        EForm el = EForm::scalar(TS, phi.phi0[i]).differential();
        for (size_t j = 0; j < n; ++j)
            el += phi.A[j] * m.P()[i][j].substituted(sub);
        if (!(el == F.F_base[i]))
            fail(Errc::BadInput, "variational F^i disagrees with the curvature");
        // dS/dX^i = dA_i + 1/2 P^{kl},_i A_k ^ A_l
        EForm el2 = phi.A[i].differential();
        for (size_t k = 0; k < n; ++k)
            for (size_t l = k + 1; l < n; ++l)
                el2 += wedge(phi.A[k], phi.A[l]) * m.P()[k][l].derivative(m.coords()[i]).substituted(sub);
        if (!(el2 == F.F_frame[i]))
            fail(Errc::BadInput, "variational F_i disagrees with the curvature");
    }
    return F;
}

EForm psm_variation(const PsmModel& m, const BundleMap& phi, const std::vector<Poly>& eps)
{
    size_t n = m.coords().size();
    if (eps.size() != n)
        fail(Errc::BadInput, "parameter has wrong rank");
    for (auto& e : eps)
        for (VarId v : e.vars())
            if (std::find(m.coords().begin(), m.coords().end(), v) == m.coords().end())
                fail(Errc::BadInput, "psm_variation expects a vertical parameter over the target");
    const Algebroid& TS = m.source();
    auto sub = phi.base_substitution();

    std::vector<EForm> dX; // d1 X^i
    for (size_t i = 0; i < n; ++i)
        dX.push_back(EForm::scalar(TS, phi.phi0[i]).differential());

    EForm out(TS);
    for (size_t i = 0; i < n; ++i)
        out += wedge(EForm::scalar(TS, eps[i].substituted(sub)).differential(), dX[i]);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Poly anti = (eps[j].derivative(m.coords()[i]) - eps[i].derivative(m.coords()[j])).substituted(sub);
            if (anti.is_zero())
                continue;
            for (size_t k = 0; k < n; ++k) {
                Poly pj = m.P()[j][k].substituted(sub);
                if (!pj.is_zero())
                    out += wedge(phi.A[k], dX[i]) * (anti * pj);
                for (size_t l = 0; l < n; ++l) {
                    Poly c = anti * m.P()[k][i].substituted(sub) * m.P()[l][j].substituted(sub) * Rat(1, 2);
                    if (!c.is_zero())
                        out += wedge(phi.A[k], phi.A[l]) * c;
                }
            }
        }
    return out;
}

ExactnessReport psm_variation_exactness(const PsmModel& m, const std::vector<Poly>& eps, int trials,
                                        int degree, std::uint64_t seed, const VarPool* pool)
{
    ExactnessReport rep;
    rep.seed = seed;
    rep.condition = gauge_condition_check(m.coords(), m.P(), eps);
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
        BundleMap phi = random_bundle_map(rng, m.source(), m.target(), degree);
        auto sub = phi.base_substitution();
        EForm density = psm_variation(m, phi, eps);
        EForm boundary(m.source());
        for (size_t i = 0; i < m.coords().size(); ++i)
            boundary += EForm::scalar(m.source(), phi.phi0[i]).differential() *
                        eps[i].substituted(sub);
        EForm defect = density - boundary.differential();
        if (!defect.is_zero()) {
            rep.exact = false;
            if (pool && !rep.witness)
                rep.witness = defect.print(*pool);
            break;
        }
    }
    return rep;
}

FExpr action_density_expr(const PsmModel& m)
{
    size_t n = m.coords().size();
    std::vector<FExpr> parts;
    for (size_t i = 0; i < n; ++i)
        parts.push_back(FieldExpr::make_wedge(
            FieldExpr::make_field_A(static_cast<int>(i)),
            FieldExpr::make_d1(FieldExpr::make_jet(Poly::variable(m.coords()[i])))));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (m.P()[i][j].is_zero())
                continue;
            parts.push_back(FieldExpr::make_wedge(
                FieldExpr::make_jet(m.P()[i][j]),
                FieldExpr::make_wedge(FieldExpr::make_field_A(static_cast<int>(i)),
                                      FieldExpr::make_field_A(static_cast<int>(j)))));
        }
    return fexpr_sum(std::move(parts));
}

FExpr boundary_term_expr(const PsmModel& m, const std::vector<Poly>& eps)
{
    std::vector<FExpr> parts;
    for (size_t i = 0; i < m.coords().size(); ++i)
        parts.push_back(FieldExpr::make_wedge(
            FieldExpr::make_jet(eps[i]),
            FieldExpr::make_d1(FieldExpr::make_jet(Poly::variable(m.coords()[i])))));
    return fexpr_sum(std::move(parts));
}

namespace {

InvarianceReport invariance_impl(const PsmModel& m, const Connection* gamma, int instances, int degree,
                                 std::uint64_t seed, const VarPool* pool)
{
    InvarianceReport rep;
    rep.seed = seed;
    FieldShape shape = m.shape();
    FExpr S = action_density_expr(m);
    for (int t = 0; t < instances; ++t) {
        Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
        GaugeParam eps = random_vertical_param(rng, shape, degree);
        VariationSpec spec = gamma ? delta_conn(shape, eps, *gamma) : delta0(shape, eps);
        FExpr defect = vary(S, spec, shape);
        // subtract the boundary term d1(eps_i dX^i)
        std::vector<Poly> eps_comp = eps.eps2;
        defect = defect - FieldExpr::make_d1(boundary_term_expr(m, eps_comp));
        BundleMap fields = random_bundle_map(rng, m.source(), m.target(), degree);
        EForm w = instantiate(defect, fields);
        if (!w.is_zero()) {
            rep.invariant = false;
            rep.failures.push_back("instance " + std::to_string(t) +
                                   (pool ? " : " + w.print(*pool) : std::string{}));
        }
    }
    return rep;
}

} // namespace

InvarianceReport psm_conn_invariance(const PsmModel& m, const Connection& gamma, int instances, int degree,
                                     std::uint64_t seed, const VarPool* pool)
{
    return invariance_impl(m, &gamma, instances, degree, seed, pool);
}

InvarianceReport psm_delta0_invariance(const PsmModel& m, int instances, int degree, std::uint64_t seed,
                                       const VarPool* pool)
{
    return invariance_impl(m, nullptr, instances, degree, seed, pool);
}

} // namespace lalg
