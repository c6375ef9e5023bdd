#include "lalg/fieldcalc.hpp"

#include "lalg/error.hpp"
#include "lalg/parser.hpp"

namespace lalg {

namespace {

FExpr node(FieldExpr&& e)
{
    return std::make_shared<const FieldExpr>(std::move(e));
}

} // namespace

FExpr FieldExpr::make_jet(Poly p)
{
    FieldExpr e;
    e.kind = Kind::Jet;
    e.jet = std::move(p);
    return node(std::move(e));
}

FExpr FieldExpr::make_field_A(int I)
{
    FieldExpr e;
    e.kind = Kind::FieldA;
    e.index = I;
    return node(std::move(e));
}

FExpr FieldExpr::make_const(EForm w)
{
    FieldExpr e;
    e.kind = Kind::Const;
    e.cform = std::move(w);
    return node(std::move(e));
}

FExpr FieldExpr::make_sum(std::vector<FExpr> kids)
{
    std::vector<FExpr> flat;
    for (auto& k : kids) {
        if (!k || k->is_zero_leaf())
            continue;
        if (k->kind == Kind::Sum)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(std::move(k));
    }
    // merge jet leaves
    Poly jets;
    std::vector<FExpr> rest;
    for (auto& k : flat) {
        if (k->kind == Kind::Jet)
            jets += k->jet;
        else
            rest.push_back(std::move(k));
    }
    if (!jets.is_zero())
        rest.push_back(make_jet(std::move(jets)));
    if (rest.empty())
        return fx_zero();
    if (rest.size() == 1)
        return rest[0];
    FieldExpr e;
    e.kind = Kind::Sum;
    e.kids = std::move(rest);
    return node(std::move(e));
}

FExpr FieldExpr::make_wedge(FExpr a, FExpr b)
{
    if (a->is_zero_leaf() || b->is_zero_leaf())
        return fx_zero();
    if (a->kind == Kind::Jet && b->kind == Kind::Jet)
        return make_jet(a->jet * b->jet);
    FieldExpr e;
    e.kind = Kind::Wedge;
    e.kids = {std::move(a), std::move(b)};
    return node(std::move(e));
}

FExpr FieldExpr::make_d1(FExpr x)
{
    if (x->is_zero_leaf())
        return fx_zero();
    FieldExpr e;
    e.kind = Kind::D1;
    e.kids = {std::move(x)};
    return node(std::move(e));
}

FExpr FieldExpr::make_contract(Section s, FExpr x)
{
    if (x->is_zero_leaf())
        return fx_zero();
    FieldExpr e;
    e.kind = Kind::Contract;
    e.section = std::move(s);
    e.kids = {std::move(x)};
    return node(std::move(e));
}

FExpr operator-(FExpr a, FExpr b)
{
    FExpr neg = FieldExpr::make_wedge(FieldExpr::make_jet(Poly::constant(-1)), std::move(b));
    return FieldExpr::make_sum({std::move(a), std::move(neg)});
}

FExpr fexpr_sum(std::vector<FExpr> kids)
{
    return FieldExpr::make_sum(std::move(kids));
}

namespace {

struct VaryCtx {
    const VariationSpec& v;
    const FieldShape& shape;
    std::unordered_map<const FieldExpr*, FExpr> memo;

    FExpr run(const FExpr& e)
    {
        auto it = memo.find(e.get());
        if (it != memo.end())
            return it->second;
        FExpr out;
        switch (e->kind) {
        case FieldExpr::Kind::Jet: {
            // chain rule through the X-dependence only
            std::vector<FExpr> parts;
            for (int i = 0; i < shape.target->dim(); ++i) {
                Poly di = e->jet.derivative(shape.target->base()[static_cast<size_t>(i)]);
                if (di.is_zero())
                    continue;
                parts.push_back(FieldExpr::make_wedge(FieldExpr::make_jet(std::move(di)),
                                                      v.deltaX.at(static_cast<size_t>(i))));
            }
            out = FieldExpr::make_sum(std::move(parts));
            break;
        }
        case FieldExpr::Kind::FieldA:
            out = v.deltaA.at(static_cast<size_t>(e->index));
            break;
        case FieldExpr::Kind::Const:
            out = fx_zero();
            break;
        case FieldExpr::Kind::Sum: {
            std::vector<FExpr> parts;
            for (auto& k : e->kids)
                parts.push_back(run(k));
            out = FieldExpr::make_sum(std::move(parts));
            break;
        }
        case FieldExpr::Kind::Wedge: {
            // ungraded Leibniz rule: the variation is an even derivation
            FExpr l = FieldExpr::make_wedge(run(e->kids[0]), e->kids[1]);
            FExpr r = FieldExpr::make_wedge(e->kids[0], run(e->kids[1]));
            out = FieldExpr::make_sum({std::move(l), std::move(r)});
            break;
        }
        case FieldExpr::Kind::D1:
            out = FieldExpr::make_d1(run(e->kids[0]));
            break;
        case FieldExpr::Kind::Contract:
            out = FieldExpr::make_contract(e->section, run(e->kids[0]));
            break;
        }
        memo.emplace(e.get(), out);
        return out;
    }
};

struct InstCtx {
    const BundleMap& fields;
    std::map<VarId, Poly> sub;
    std::unordered_map<const FieldExpr*, EForm> memo;

    EForm run(const FExpr& e)
    {
        auto it = memo.find(e.get());
        if (it != memo.end())
            return it->second;
        const Algebroid& E1 = *fields.source;
        EForm out(E1);
        switch (e->kind) {
        case FieldExpr::Kind::Jet:
            out = EForm::scalar(E1, e->jet.substituted(sub));
            break;
        case FieldExpr::Kind::FieldA:
            out = fields.A.at(static_cast<size_t>(e->index));
            break;
        case FieldExpr::Kind::Const:
            if (!(&e->cform->algebroid() == &E1))
                fail(Errc::AlgebroidMismatch, "constant form lives over a different algebroid");
            out = *e->cform;
            break;
        case FieldExpr::Kind::Sum:
            for (auto& k : e->kids)
                out += run(k);
            break;
        case FieldExpr::Kind::Wedge:
            out = wedge(run(e->kids[0]), run(e->kids[1]));
            break;
        case FieldExpr::Kind::D1:
            out = run(e->kids[0]).differential();
            break;
        case FieldExpr::Kind::Contract: {
            EForm inner = run(e->kids[0]);
            // contraction annihilates the scalar part (internal Cartan use)
            EForm graded(E1);
            for (auto& [t, c] : inner.terms())
                if (!t.empty())
                    graded.add_term(t, c);
            Section s = e->section;
            out = graded.is_zero() ? EForm(E1) : graded.contract(s);
            break;
        }
        }
        memo.emplace(e.get(), out);
        return out;
    }
};

} // namespace

FExpr vary(const FExpr& e, const VariationSpec& v, const FieldShape& shape)
{
    if (static_cast<int>(v.deltaX.size()) != shape.target->dim() ||
        static_cast<int>(v.deltaA.size()) != shape.target->rank())
        fail(Errc::MissingSlot, "variation spec has wrong shape");
    VaryCtx ctx{v, shape, {}};
    return ctx.run(e);
}

EForm instantiate(const FExpr& e, const BundleMap& fields)
{
    InstCtx ctx{fields, fields.base_substitution(), {}};
    return ctx.run(e);
}

IdentityReport identity_check(const FExpr& e, const FieldShape& shape, int trials, int degree,
                              std::uint64_t seed, const VarPool* pool)
{
    if (trials < 1)
        fail(Errc::BadInput, "trials must be >= 1");
    IdentityReport rep;
    rep.trials = trials;
    rep.seed = seed;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
        BundleMap fields = random_bundle_map(rng, *shape.source, *shape.target, degree);
        EForm w = instantiate(e, fields);
        if (!w.is_zero()) {
            rep.pass = false;
            rep.failing_trial = t;
            if (pool)
                rep.witness = w.print(*pool);
            return rep;
        }
    }
    return rep;
}

FExpr curvature_base_expr(const FieldShape& shape, int i)
{
    VarId xi = shape.target->base().at(static_cast<size_t>(i));
    std::vector<FExpr> parts;
    parts.push_back(FieldExpr::make_d1(FieldExpr::make_jet(Poly::variable(xi))));
    for (int I = 0; I < shape.target->rank(); ++I) {
        Poly rho = shape.target->anchor(I, i);
        if (rho.is_zero())
            continue;
        parts.push_back(FieldExpr::make_wedge(FieldExpr::make_jet(-rho), FieldExpr::make_field_A(I)));
    }
    return FieldExpr::make_sum(std::move(parts));
}

FExpr curvature_frame_expr(const FieldShape& shape, int I)
{
    std::vector<FExpr> parts;
    parts.push_back(FieldExpr::make_d1(FieldExpr::make_field_A(I)));
    for (int J = 0; J < shape.target->rank(); ++J)
        for (int K = J + 1; K < shape.target->rank(); ++K) {
            Poly c = shape.target->structure(I, J, K);
            if (c.is_zero())
                continue;
            FExpr aa = FieldExpr::make_wedge(FieldExpr::make_field_A(J), FieldExpr::make_field_A(K));
            parts.push_back(FieldExpr::make_wedge(FieldExpr::make_jet(std::move(c)), std::move(aa)));
        }
    return FieldExpr::make_sum(std::move(parts));
}

} // namespace lalg
