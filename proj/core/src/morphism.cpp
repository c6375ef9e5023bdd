#include "lalg/morphism.hpp"

#include "lalg/error.hpp"

#include <algorithm>

namespace lalg {

BundleMap::BundleMap(const Algebroid& src, const Algebroid& tgt, std::vector<Poly> phi0_,
                     std::vector<EForm> A_)
    : source(&src), target(&tgt), phi0(std::move(phi0_)), A(std::move(A_))
{
    if (static_cast<int>(phi0.size()) != tgt.dim())
        fail(Errc::BadInput, "phi0 must have one component per target coordinate");
    if (static_cast<int>(A.size()) != tgt.rank())
        fail(Errc::BadInput, "A must have one component per target frame element");
    std::set<VarId> allowed(src.base().begin(), src.base().end());
    for (auto& p : phi0)
        for (VarId v : p.vars())
            if (!allowed.count(v))
                fail(Errc::BadInput, "phi0 uses a variable outside the source chart");
    for (auto& a : A) {
        if (!(&a.algebroid() == &src))
            fail(Errc::AlgebroidMismatch, "A components must live over the source");
        for (auto& [t, c] : a.terms()) {
            if (t.size() != 1)
                fail(Errc::BadInput, "A components must be degree-1 forms");
            for (VarId v : c.vars())
                if (!allowed.count(v))
                    fail(Errc::BadInput, "A uses a variable outside the source chart");
        }
    }
}

std::map<VarId, Poly> BundleMap::base_substitution() const
{
    std::map<VarId, Poly> sub;
    for (int i = 0; i < target->dim(); ++i)
        sub.emplace(target->base()[static_cast<size_t>(i)], phi0[static_cast<size_t>(i)]);
    return sub;
}

bool Curvature::all_zero() const
{
    for (auto& f : F_base)
        if (!f.is_zero())
            return false;
    for (auto& f : F_frame)
        if (!f.is_zero())
            return false;
    return true;
}

EForm pullback(const BundleMap& phi, const EForm& omega)
{
    if (!(&omega.algebroid() == phi.target))
        fail(Errc::AlgebroidMismatch, "pullback expects a form over the target");
    auto sub = phi.base_substitution();
    EForm r(*phi.source);
    for (auto& [t, c] : omega.terms()) {
        EForm part = EForm::scalar(*phi.source, c.substituted(sub));
        for (int I : t)
            part = wedge(part, phi.A[static_cast<size_t>(I)]);
        r += part;
    }
    return r;
}

Curvature curvature(const BundleMap& phi)
{
    const Algebroid& E1 = *phi.source;
    const Algebroid& E2 = *phi.target;
    auto sub = phi.base_substitution();
    Curvature out;
    for (int i = 0; i < E2.dim(); ++i) {
        EForm F = EForm::scalar(E1, phi.phi0[static_cast<size_t>(i)]).differential();
        for (int I = 0; I < E2.rank(); ++I)
            F -= phi.A[static_cast<size_t>(I)] * E2.anchor(I, i).substituted(sub);
        out.F_base.push_back(std::move(F));
    }
    for (int I = 0; I < E2.rank(); ++I) {
        EForm F = phi.A[static_cast<size_t>(I)].differential();
        for (int J = 0; J < E2.rank(); ++J)
            for (int K = J + 1; K < E2.rank(); ++K) {
                Poly c = E2.structure(I, J, K).substituted(sub);
                if (c.is_zero())
                    continue;
                F += wedge(phi.A[static_cast<size_t>(J)], phi.A[static_cast<size_t>(K)]) * c;
            }
        out.F_frame.push_back(std::move(F));
    }
    return out;
}

EForm f_phi(const BundleMap& phi, const EForm& omega)
{
    return pullback(phi, omega).differential() - pullback(phi, omega.differential());
}

MorphismReport is_morphism(const BundleMap& phi, std::uint64_t seed, int random_forms, const VarPool* pool)
{
    MorphismReport rep;
    rep.seed = seed;
    Curvature F = curvature(phi);
    rep.is_morphism = F.all_zero();
    if (!rep.is_morphism && pool) {
        for (size_t i = 0; i < F.F_base.size(); ++i)
            if (!F.F_base[i].is_zero()) {
                rep.witness = "F_base[" + std::to_string(i + 1) + "] = " + F.F_base[i].print(*pool);
                break;
            }
        if (!rep.witness)
            for (size_t I = 0; I < F.F_frame.size(); ++I)
                if (!F.F_frame[I].is_zero()) {
                    rep.witness = "F_frame[" + std::to_string(I + 1) + "] = " + F.F_frame[I].print(*pool);
                    break;
                }
    }

    // chain spot check: d1 Phi(w) = Phi(d2 w) on the generators and on
    // random forms of degree <= 2
    rep.chain_spot_check = true;
    std::vector<EForm> samples;
    for (int i = 0; i < phi.target->dim(); ++i)
        samples.push_back(
            EForm::scalar(*phi.target, Poly::variable(phi.target->base()[static_cast<size_t>(i)])));
    for (int I = 0; I < phi.target->rank(); ++I)
        samples.push_back(EForm::coframe(*phi.target, I));
    Rng rng(seed);
    for (int k = 0; k < random_forms; ++k)
        samples.push_back(random_eform(rng, *phi.target, 2, 2));
    for (auto& w : samples)
        if (!f_phi(phi, w).is_zero()) {
            rep.chain_spot_check = false;
            break;
        }
    rep.consistent = (rep.is_morphism == rep.chain_spot_check);
    return rep;
}

namespace {

void check_sum_shape(const BundleMap& phi, const Algebroid& sum)
{
    if (sum.rank() != phi.source->rank() + phi.target->rank() ||
        sum.dim() != phi.source->dim() + phi.target->dim())
        fail(Errc::AlgebroidMismatch, "algebroid is not the exterior sum of source and target");
}

} // namespace

EForm graph_pullback(const BundleMap& phi, const Algebroid& sum, const EForm& omega)
{
    if (!(&omega.algebroid() == &sum))
        fail(Errc::AlgebroidMismatch, "form must live over the exterior sum");
    check_sum_shape(phi, sum);
    int r1 = phi.source->rank();
    auto sub = phi.base_substitution();
    EForm r(*phi.source);
    for (auto& [t, c] : omega.terms()) {
        // indices are strictly increasing, so the E1 block precedes the E2
        // block with no interleaving sign
        EForm part = EForm::scalar(*phi.source, c.substituted(sub));
        IndexTuple left;
        for (int I : t) {
            if (I < r1)
                left.push_back(I);
        }
        EForm lf(*phi.source);
        lf.add_term(left, Poly::constant(1));
        part = wedge(part, lf);
        for (int I : t)
            if (I >= r1)
                part = wedge(part, phi.A[static_cast<size_t>(I - r1)]);
        r += part;
    }
    return r;
}

EForm e_phi(const BundleMap& phi, const Algebroid& sum, const EForm& omega)
{
    EForm down = graph_pullback(phi, sum, omega);
    // P1: re-embed, same index positions (E1 coframes lead the sum frame)
    EForm up(sum);
    for (auto& [t, c] : down.terms())
        up.add_term(t, c);
    return up;
}

EForm e_f_phi(const BundleMap& phi, const Algebroid& sum, const EForm& omega)
{
    return e_phi(phi, sum, omega).differential() - e_phi(phi, sum, omega.differential());
}

Connection Connection::zero(const Algebroid& target)
{
    Connection g;
    g.gamma.assign(static_cast<size_t>(target.rank()),
                   std::vector<std::vector<Poly>>(static_cast<size_t>(target.dim()),
                                                  std::vector<Poly>(static_cast<size_t>(target.rank()))));
    return g;
}

Curvature f_gamma(const BundleMap& phi, const Connection& gamma)
{
    Curvature F = curvature(phi);
    auto sub = phi.base_substitution();
    int n2 = phi.target->dim(), r2 = phi.target->rank();
    for (int I = 0; I < r2; ++I)
        for (int i = 0; i < n2; ++i)
            for (int J = 0; J < r2; ++J) {
                Poly g = gamma.gamma.at(static_cast<size_t>(I)).at(static_cast<size_t>(i)).at(
                    static_cast<size_t>(J));
                if (g.is_zero())
                    continue;
                F.F_frame[static_cast<size_t>(I)] +=
                    wedge(F.F_base[static_cast<size_t>(i)], phi.A[static_cast<size_t>(J)]) *
                    g.substituted(sub);
            }
    return F;
}

PhiRelatedReport phi_related(const BundleMap& phi, const std::vector<std::pair<Section, Section>>& pairs)
{
    PhiRelatedReport rep;
    Curvature F = curvature(phi);
    rep.anchor_ok = true;
    for (auto& f : F.F_base)
        if (!f.is_zero())
            rep.anchor_ok = false;

    auto sub = phi.base_substitution();
    auto image = [&](const Section& s1) {
        // (phi . s1)^I = <A^I, s1> as a function on the source
        std::vector<Poly> out;
        for (int I = 0; I < phi.target->rank(); ++I) {
            Poly c;
            for (int a = 0; a < phi.source->rank(); ++a)
                c += phi.A[static_cast<size_t>(I)].coefficient({a}) * s1.comp.at(static_cast<size_t>(a));
            out.push_back(c);
        }
        return out;
    };
    auto related = [&](const Section& s1, const Section& s2) {
        auto im = image(s1);
        for (int I = 0; I < phi.target->rank(); ++I)
            if (!(im[static_cast<size_t>(I)] == s2.comp.at(static_cast<size_t>(I)).substituted(sub)))
                return false;
        return true;
    };

    for (auto& [s1, s2] : pairs)
        rep.pair_related.push_back(related(s1, s2));

    rep.related = rep.anchor_ok;
    rep.bracket_ok.assign(pairs.size(), std::vector<bool>(pairs.size(), true));
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = 0; j < pairs.size(); ++j) {
            if (i == j || !rep.pair_related[i] || !rep.pair_related[j])
                continue;
            Section b1 = section_bracket(*phi.source, pairs[i].first, pairs[j].first);
            Section b2 = section_bracket(*phi.target, pairs[i].second, pairs[j].second);
            bool ok = related(b1, b2);
            rep.bracket_ok[i][j] = ok;
            if (!ok)
                rep.related = false;
        }
    return rep;
}

BundleMap random_bundle_map(Rng& rng, const Algebroid& source, const Algebroid& target, int degree)
{
    std::vector<Poly> phi0;
    for (int i = 0; i < target.dim(); ++i)
        phi0.push_back(random_poly(rng, source.base(), degree));
    std::vector<EForm> A;
    for (int I = 0; I < target.rank(); ++I) {
        EForm a(source);
        for (int al = 0; al < source.rank(); ++al)
            a.add_term({al}, random_poly(rng, source.base(), degree));
        A.push_back(std::move(a));
    }
    return BundleMap(source, target, std::move(phi0), std::move(A));
}

EForm random_eform(Rng& rng, const Algebroid& alg, int max_degree, int coeff_degree)
{
    EForm w(alg);
    int r = alg.rank();
    int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree + 1)));
    deg = std::min(deg, r);
    // a few random strictly increasing tuples of that degree
    int terms = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < terms; ++k) {
        IndexTuple t;
        std::vector<int> all(static_cast<size_t>(r));
        for (int I = 0; I < r; ++I)
            all[static_cast<size_t>(I)] = I;
        for (int d = 0; d < deg; ++d) {
            size_t pick = static_cast<size_t>(rng.below(all.size()));
            t.push_back(all[pick]);
            all.erase(all.begin() + static_cast<long>(pick));
        }
        std::sort(t.begin(), t.end());
        w.add_term(t, random_poly(rng, alg.base(), coeff_degree));
    }
    return w;
}

} // namespace lalg
