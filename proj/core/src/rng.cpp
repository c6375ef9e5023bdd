#include "lalg/rng.hpp"

namespace lalg {

namespace {

void enumerate(const std::vector<VarId>& vars, size_t i, int budget, Monomial cur,
               std::vector<Monomial>& out)
{
    if (i == vars.size()) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= budget; ++e)
        enumerate(vars, i + 1, budget - e, cur * Monomial::var(vars[i], e), out);
}

} // namespace

std::vector<Monomial> monomials_up_to(const std::vector<VarId>& vars, int deg)
{
    std::vector<Monomial> out;
    enumerate(vars, 0, deg, Monomial{}, out);
    return out;
}

Poly random_poly(Rng& rng, const std::vector<VarId>& vars, int deg)
{
    Poly p;
    for (auto& m : monomials_up_to(vars, deg))
        p.add_term(m, rng.coeff());
    return p;
}

} // namespace lalg
