#include "lalg/algebroid.hpp"

#include "lalg/error.hpp"

#include <algorithm>
#include <set>

namespace lalg {

Algebroid::Algebroid(std::vector<VarId> base, std::vector<std::string> frame)
    : base_(std::move(base)), frame_(std::move(frame))
{
    if (frame_.empty())
        fail(Errc::BadInput, "algebroid rank must be >= 1");
    std::set<std::string> names(frame_.begin(), frame_.end());
    if (names.size() != frame_.size())
        fail(Errc::NameClash, "duplicate frame names");
    std::set<VarId> coords(base_.begin(), base_.end());
    if (coords.size() != base_.size())
        fail(Errc::NameClash, "duplicate base coordinates");
    anchor_.assign(frame_.size(), std::vector<Poly>(base_.size()));
}

void Algebroid::set_anchor(int I, int i, Poly p)
{
    for (VarId v : p.vars())
        if (std::find(base_.begin(), base_.end(), v) == base_.end())
            fail(Errc::BadInput, "anchor entry uses a non-base variable");
    anchor_.at(static_cast<size_t>(I)).at(static_cast<size_t>(i)) = std::move(p);
}

const Poly& Algebroid::anchor(int I, int i) const
{
    return anchor_.at(static_cast<size_t>(I)).at(static_cast<size_t>(i));
}

void Algebroid::set_structure(int I, int J, int K, Poly p)
{
    if (J == K)
        fail(Errc::BadInput, "C^I_JJ is identically zero");
    for (VarId v : p.vars())
        if (std::find(base_.begin(), base_.end(), v) == base_.end())
            fail(Errc::BadInput, "structure function uses a non-base variable");
    if (J > K) {
        std::swap(J, K);
        p = -p;
    }
    auto key = std::make_tuple(I, J, K);
    if (p.is_zero())
        c_.erase(key);
    else
        c_[key] = std::move(p);
}

Poly Algebroid::structure(int I, int J, int K) const
{
    if (J == K)
        return Poly{};
    bool flip = J > K;
    if (flip)
        std::swap(J, K);
    auto it = c_.find(std::make_tuple(I, J, K));
    if (it == c_.end())
        return Poly{};
    return flip ? -it->second : it->second;
}

FrameChange::FrameChange(const Algebroid& E, std::vector<std::vector<Poly>> B_,
                         std::vector<std::vector<Poly>> B_inv_)
    : B(std::move(B_)), B_inv(std::move(B_inv_))
{
    size_t r = static_cast<size_t>(E.rank());
    if (B.size() != r || B_inv.size() != r)
        fail(Errc::BadInput, "frame change has wrong shape");
    for (size_t I = 0; I < r; ++I) {
        if (B[I].size() != r || B_inv[I].size() != r)
            fail(Errc::BadInput, "frame change has wrong shape");
    }
    for (size_t I = 0; I < r; ++I)
        for (size_t J = 0; J < r; ++J) {
            Poly s;
            for (size_t K = 0; K < r; ++K)
                s += B[I][K] * B_inv[K][J];
            Poly expect = (I == J) ? Poly::constant(1) : Poly{};
            if (!(s == expect))
                fail(Errc::InvalidInverse, "B*B_inv is not the identity");
        }
}

AxiomReport verify_axioms(const Algebroid& E)
{
    AxiomReport rep;
    int n = E.dim(), r = E.rank();

    for (int I = 0; I < r; ++I)
        for (int J = I + 1; J < r; ++J)
            for (int i = 0; i < n; ++i) {
                Poly d;
                for (int j = 0; j < n; ++j)
                    d += E.anchor(I, j) * E.anchor(J, i).derivative(E.base()[static_cast<size_t>(j)]) -
                         E.anchor(J, j) * E.anchor(I, i).derivative(E.base()[static_cast<size_t>(j)]);
                for (int K = 0; K < r; ++K)
                    d -= E.anchor(K, i) * E.structure(K, I, J);
                if (!d.is_zero()) {
                    rep.anchor_compat = false;
                    rep.anchor_witnesses.push_back({{I + 1, J + 1, i + 1}, d});
                }
            }

    for (int I = 0; I < r; ++I)
        for (int J = I + 1; J < r; ++J)
            for (int K = J + 1; K < r; ++K)
                for (int L = 0; L < r; ++L) {
                    Poly d;
                    // cyclic (I,J,K), (J,K,I), (K,I,J)
                    const int cyc[3][3] = {{I, J, K}, {J, K, I}, {K, I, J}};
                    for (auto& t : cyc) {
                        for (int m = 0; m < n; ++m)
                            d += E.anchor(t[0], m) *
                                 E.structure(L, t[1], t[2]).derivative(E.base()[static_cast<size_t>(m)]);
                        for (int M = 0; M < r; ++M)
                            d += E.structure(L, t[0], M) * E.structure(M, t[1], t[2]);
                    }
                    if (!d.is_zero()) {
                        rep.jacobi = false;
                        rep.jacobi_witnesses.push_back({{I + 1, J + 1, K + 1, L + 1}, d});
                    }
                }
    return rep;
}

PoissonReport jacobi_poisson(const std::vector<VarId>& coords, const std::vector<std::vector<Poly>>& P)
{
    size_t n = coords.size();
    if (P.size() != n)
        fail(Errc::BadInput, "Poisson matrix has wrong shape");
    for (size_t i = 0; i < n; ++i) {
        if (P[i].size() != n)
            fail(Errc::BadInput, "Poisson matrix has wrong shape");
        for (size_t j = 0; j <= i; ++j)
            if (!((P[i][j] + P[j][i]).is_zero()))
                fail(Errc::NotAntisymmetric, "Poisson matrix is not antisymmetric");
    }
    PoissonReport rep;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                Poly d;
                for (size_t s = 0; s < n; ++s)
                    d += P[i][s] * P[j][k].derivative(coords[s]) + P[j][s] * P[k][i].derivative(coords[s]) +
                         P[k][s] * P[i][j].derivative(coords[s]);
                if (!d.is_zero()) {
                    rep.jacobi = false;
                    rep.witnesses.push_back(
                        {{static_cast<int>(i) + 1, static_cast<int>(j) + 1, static_cast<int>(k) + 1}, d});
                }
            }
    return rep;
}

Algebroid lie_algebra(std::vector<std::string> frame, const std::map<std::tuple<int, int, int>, Rat>& C)
{
    Algebroid E({}, std::move(frame));
    for (auto& [key, c] : C) {
        auto [I, J, K] = key;
        E.set_structure(I, J, K, Poly::constant(c));
    }
    return E;
}

Algebroid so3()
{
    return lie_algebra({"e1", "e2", "e3"},
                       {{{2, 0, 1}, Rat(1)}, {{0, 1, 2}, Rat(1)}, {{1, 2, 0}, Rat(1)}});
}

Algebroid tangent_bundle(const std::vector<VarId>& coords, const VarPool& pool)
{
    std::vector<std::string> frame;
    frame.reserve(coords.size());
    for (VarId v : coords)
        frame.push_back("d" + pool.name(v));
    Algebroid E(coords, std::move(frame));
    for (size_t i = 0; i < coords.size(); ++i)
        E.set_anchor(static_cast<int>(i), static_cast<int>(i), Poly::constant(1));
    return E;
}

Algebroid poisson_cotangent(const std::vector<VarId>& coords, const std::vector<std::vector<Poly>>& P,
                            const std::string& frame_prefix)
{
    size_t n = coords.size();
    if (P.size() != n)
        fail(Errc::BadInput, "Poisson matrix has wrong shape");
    for (size_t i = 0; i < n; ++i) {
        if (P[i].size() != n)
            fail(Errc::BadInput, "Poisson matrix has wrong shape");
        for (size_t j = 0; j <= i; ++j)
            if (!((P[i][j] + P[j][i]).is_zero()))
                fail(Errc::NotAntisymmetric, "Poisson matrix is not antisymmetric");
    }
    std::vector<std::string> frame;
    for (size_t i = 0; i < n; ++i)
        frame.push_back(frame_prefix + std::to_string(i + 1));
    Algebroid E(coords, std::move(frame));
    // b_J ~ dX^j: rho(dX^j) = P^{jm} d_m, i.e. rho^i_J = P^{ji};
    // [dX^j, dX^k] = dP^{jk} = P^{jk},_i dX^i, i.e. C^I_JK = P^{jk},_i.
    for (size_t J = 0; J < n; ++J)
        for (size_t i = 0; i < n; ++i)
            E.set_anchor(static_cast<int>(J), static_cast<int>(i), P[J][i]);
    for (size_t I = 0; I < n; ++I)
        for (size_t J = 0; J < n; ++J)
            for (size_t K = J + 1; K < n; ++K)
                E.set_structure(static_cast<int>(I), static_cast<int>(J), static_cast<int>(K),
                                P[J][K].derivative(coords[I]));
    return E;
}

Algebroid exterior_sum(const Algebroid& E1, const Algebroid& E2)
{
    std::set<VarId> b1(E1.base().begin(), E1.base().end());
    for (VarId v : E2.base())
        if (b1.count(v))
            fail(Errc::NameClash, "exterior sum: shared base coordinate");
    std::set<std::string> f1(E1.frame().begin(), E1.frame().end());
    for (auto& f : E2.frame())
        if (f1.count(f))
            fail(Errc::NameClash, "exterior sum: shared frame name '" + f + "'");

    std::vector<VarId> base = E1.base();
    base.insert(base.end(), E2.base().begin(), E2.base().end());
    std::vector<std::string> frame = E1.frame();
    frame.insert(frame.end(), E2.frame().begin(), E2.frame().end());
    Algebroid E(std::move(base), std::move(frame));

    int n1 = E1.dim(), r1 = E1.rank();
    for (int I = 0; I < r1; ++I)
        for (int i = 0; i < n1; ++i)
            E.set_anchor(I, i, E1.anchor(I, i));
    for (int I = 0; I < E2.rank(); ++I)
        for (int i = 0; i < E2.dim(); ++i)
            E.set_anchor(r1 + I, n1 + i, E2.anchor(I, i));
    for (int I = 0; I < r1; ++I)
        for (int J = 0; J < r1; ++J)
            for (int K = J + 1; K < r1; ++K)
                E.set_structure(I, J, K, E1.structure(I, J, K));
    for (int I = 0; I < E2.rank(); ++I)
        for (int J = 0; J < E2.rank(); ++J)
            for (int K = J + 1; K < E2.rank(); ++K)
                E.set_structure(r1 + I, r1 + J, r1 + K, E2.structure(I, J, K));
    return E;
}

Algebroid change_frame(const Algebroid& E, const FrameChange& F)
{
    int n = E.dim(), r = E.rank();
    std::vector<std::string> frame;
    for (auto& f : E.frame())
        frame.push_back(f + "~");
    Algebroid T(E.base(), std::move(frame));

    for (int J = 0; J < r; ++J)
        for (int i = 0; i < n; ++i) {
            Poly a;
            for (int I = 0; I < r; ++I)
                a += F.B[static_cast<size_t>(I)][static_cast<size_t>(J)] * E.anchor(I, i);
            T.set_anchor(J, i, a);
        }

    for (int N = 0; N < r; ++N)
        for (int J = 0; J < r; ++J)
            for (int K = J + 1; K < r; ++K) {
                Poly c;
                for (int M = 0; M < r; ++M) {
                    Poly inner;
                    for (int I = 0; I < r; ++I)
                        for (int L = 0; L < r; ++L)
                            inner += F.B[static_cast<size_t>(I)][static_cast<size_t>(J)] *
                                     F.B[static_cast<size_t>(L)][static_cast<size_t>(K)] * E.structure(M, I, L);
                    for (int I = 0; I < r; ++I)
                        for (int m = 0; m < n; ++m) {
                            VarId xm = E.base()[static_cast<size_t>(m)];
                            inner += F.B[static_cast<size_t>(I)][static_cast<size_t>(J)] * E.anchor(I, m) *
                                     F.B[static_cast<size_t>(M)][static_cast<size_t>(K)].derivative(xm);
                            inner -= F.B[static_cast<size_t>(I)][static_cast<size_t>(K)] * E.anchor(I, m) *
                                     F.B[static_cast<size_t>(M)][static_cast<size_t>(J)].derivative(xm);
                        }
                    c += F.B_inv[static_cast<size_t>(N)][static_cast<size_t>(M)] * inner;
                }
                T.set_structure(N, J, K, c);
            }
    return T;
}

Poly anchor_apply(const Algebroid& E, const Section& s, const Poly& f)
{
    Poly r;
    for (int I = 0; I < E.rank(); ++I)
        for (int m = 0; m < E.dim(); ++m)
            r += s.comp.at(static_cast<size_t>(I)) * E.anchor(I, m) * f.derivative(E.base()[static_cast<size_t>(m)]);
    return r;
}

Section section_bracket(const Algebroid& E, const Section& s, const Section& t)
{
    if (s.rank() != E.rank() || t.rank() != E.rank())
        fail(Errc::BadInput, "section has wrong rank");
    Section out;
    out.comp.resize(static_cast<size_t>(E.rank()));
    for (int K = 0; K < E.rank(); ++K) {
        Poly c;
        for (int I = 0; I < E.rank(); ++I)
            for (int J = 0; J < E.rank(); ++J)
                c += s.comp[static_cast<size_t>(I)] * t.comp[static_cast<size_t>(J)] * E.structure(K, I, J);
        c += anchor_apply(E, s, t.comp[static_cast<size_t>(K)]);
        c -= anchor_apply(E, t, s.comp[static_cast<size_t>(K)]);
        out.comp[static_cast<size_t>(K)] = c;
    }
    return out;
}

} // namespace lalg
