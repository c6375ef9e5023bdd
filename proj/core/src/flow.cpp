#include "lalg/flow.hpp"

#include "lalg/error.hpp"

#include <algorithm>
#include <cmath>

namespace lalg {

CompiledPoly::CompiledPoly(const Poly& p, const std::vector<VarId>& order)
{
    for (auto& [m, c] : p.terms()) {
        Term t;
        t.coeff = rat_to_double(c);
        for (auto& [v, e] : m.factors()) {
            auto it = std::find(order.begin(), order.end(), v);
            if (it == order.end())
                fail(Errc::MissingVariable, "compiled polynomial uses a variable outside the grid order");
            t.powers.emplace_back(static_cast<int>(it - order.begin()), e);
        }
        terms_.push_back(std::move(t));
    }
}

double CompiledPoly::eval(const double* point) const
{
    double acc = 0.0;
    for (auto& t : terms_) {
        double v = t.coeff;
        for (auto& [slot, e] : t.powers) {
            double b = point[slot];
            for (int k = 0; k < e; ++k)
                v *= b;
        }
        acc += v;
    }
    return acc;
}

GridField GridField::zeros(int N, double L, int n2, int r2)
{
    GridField g;
    g.N = N;
    g.L = L;
    g.X.assign(static_cast<size_t>(n2), std::vector<double>(static_cast<size_t>(N) * N, 0.0));
    for (int I = 0; I < r2; ++I)
        g.A.push_back({std::vector<double>(static_cast<size_t>(N) * N, 0.0),
                       std::vector<double>(static_cast<size_t>(N) * N, 0.0)});
    return g;
}

FlowModel::FlowModel(const Algebroid& target, const std::vector<Poly>& eps_polys,
                     const std::vector<VarId>& sigma_coords,
                     const std::vector<std::vector<Poly>>* poisson)
    : n2(target.dim()), r2(target.rank())
{
    std::vector<VarId> order = sigma_coords; // (x1, x2, X1..Xn)
    order.insert(order.end(), target.base().begin(), target.base().end());
    rho.assign(static_cast<size_t>(r2), {});
    for (int I = 0; I < r2; ++I)
        for (int i = 0; i < n2; ++i)
            rho[static_cast<size_t>(I)].emplace_back(target.anchor(I, i), order);
    C.assign(static_cast<size_t>(r2),
             std::vector<std::vector<CompiledPoly>>(static_cast<size_t>(r2)));
    for (int I = 0; I < r2; ++I)
        for (int J = 0; J < r2; ++J)
            for (int K = 0; K < r2; ++K)
                C[static_cast<size_t>(I)][static_cast<size_t>(J)].emplace_back(target.structure(I, J, K),
                                                                               order);
    if (static_cast<int>(eps_polys.size()) != r2)
        fail(Errc::BadInput, "eps has wrong rank");
    for (auto& e : eps_polys)
        eps.emplace_back(e, order);
    if (poisson) {
        P.assign(static_cast<size_t>(n2), {});
        for (int i = 0; i < n2; ++i)
            for (int j = 0; j < n2; ++j)
                P[static_cast<size_t>(i)].emplace_back((*poisson)[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                                       order);
    }
}

double pairwise_sum(const std::vector<double>& v)
{
    if (v.empty())
        return 0.0;
    std::vector<double> buf = v;
    size_t n = buf.size();
    while (n > 1) {
        size_t half = n / 2;
        for (size_t i = 0; i < half; ++i)
            buf[i] = buf[2 * i] + buf[2 * i + 1];
        if (n % 2) {
            buf[half] = buf[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return buf[0];
}

namespace {

struct GridGeom {
    int N;
    double h;
    size_t idx(int a, int b) const
    {
        int aa = (a % N + N) % N;
        int bb = (b % N + N) % N;
        return static_cast<size_t>(aa) * static_cast<size_t>(N) + static_cast<size_t>(bb);
    }
};

/// point buffer (x1, x2, X1..Xn) at grid node (a, b)
void fill_point(const GridField& g, const GridGeom& geo, int a, int b, std::vector<double>& pt)
{
    pt[0] = a * geo.h;
    pt[1] = b * geo.h;
    size_t p = geo.idx(a, b);
    for (int i = 0; i < g.n2(); ++i)
        pt[static_cast<size_t>(2 + i)] = g.X[static_cast<size_t>(i)][p];
}

/// central difference along mu of a composed scalar grid
double central(const std::vector<double>& f, const GridGeom& geo, int a, int b, int mu)
{
    if (mu == 0)
        return (f[geo.idx(a + 1, b)] - f[geo.idx(a - 1, b)]) / (2.0 * geo.h);
    return (f[geo.idx(a, b + 1)] - f[geo.idx(a, b - 1)]) / (2.0 * geo.h);
}

} // namespace

Residuals residuals(const GridField& g, const FlowModel& model)
{
    GridGeom geo{g.N, g.h()};
    std::vector<double> pt(2 + static_cast<size_t>(model.n2));
    Residuals out;
    for (int a = 0; a < g.N; ++a)
        for (int b = 0; b < g.N; ++b) {
            fill_point(g, geo, a, b, pt);
            size_t p = geo.idx(a, b);
            for (int i = 0; i < model.n2; ++i)
                for (int mu = 0; mu < 2; ++mu) {
                    double d = central(g.X[static_cast<size_t>(i)], geo, a, b, mu);
                    for (int I = 0; I < model.r2; ++I)
                        d -= model.rho[static_cast<size_t>(I)][static_cast<size_t>(i)].eval(pt.data()) *
                             g.A[static_cast<size_t>(I)][static_cast<size_t>(mu)][p];
                    if (!std::isfinite(d))
                        fail(Errc::NonFinite, "residual is not finite");
                    out.sup_F_base = std::max(out.sup_F_base, std::abs(d));
                }
            for (int I = 0; I < model.r2; ++I) {
                double d = central(g.A[static_cast<size_t>(I)][1], geo, a, b, 0) -
                           central(g.A[static_cast<size_t>(I)][0], geo, a, b, 1);
                for (int J = 0; J < model.r2; ++J)
                    for (int K = 0; K < model.r2; ++K)
                        d += model.C[static_cast<size_t>(I)][static_cast<size_t>(J)][static_cast<size_t>(K)]
                                     .eval(pt.data()) *
                             g.A[static_cast<size_t>(J)][0][p] * g.A[static_cast<size_t>(K)][1][p] * 0.5;
                if (!std::isfinite(d))
                    fail(Errc::NonFinite, "residual is not finite");
                out.sup_F_frame = std::max(out.sup_F_frame, std::abs(d));
            }
        }
    return out;
}

double action_numeric(const GridField& g, const FlowModel& model)
{
    if (!model.has_poisson())
        fail(Errc::BadInput, "action requires a PSM model");
    GridGeom geo{g.N, g.h()};
    std::vector<double> pt(2 + static_cast<size_t>(model.n2));
    std::vector<double> cells(static_cast<size_t>(g.N) * g.N, 0.0);
    for (int a = 0; a < g.N; ++a)
        for (int b = 0; b < g.N; ++b) {
            fill_point(g, geo, a, b, pt);
            size_t p = geo.idx(a, b);
            double density = 0.0;
            for (int i = 0; i < model.n2; ++i) {
                double d1 = central(g.X[static_cast<size_t>(i)], geo, a, b, 0);
                double d2 = central(g.X[static_cast<size_t>(i)], geo, a, b, 1);
                density += g.A[static_cast<size_t>(i)][0][p] * d2 - g.A[static_cast<size_t>(i)][1][p] * d1;
                for (int j = 0; j < model.n2; ++j)
                    density += 0.5 * model.P[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(pt.data()) *
                               (g.A[static_cast<size_t>(i)][0][p] * g.A[static_cast<size_t>(j)][1][p] -
                                g.A[static_cast<size_t>(i)][1][p] * g.A[static_cast<size_t>(j)][0][p]);
            }
            cells[p] = density * geo.h * geo.h;
        }
    return pairwise_sum(cells);
}

namespace {

struct State {
    std::vector<double> v; // X grids then A grids, row-major

    static State from(const GridField& g)
    {
        State s;
        for (auto& x : g.X)
            s.v.insert(s.v.end(), x.begin(), x.end());
        for (auto& a : g.A)
            for (auto& comp : a)
                s.v.insert(s.v.end(), comp.begin(), comp.end());
        return s;
    }
    void write_to(GridField& g) const
    {
        size_t off = 0, cell = g.X.empty() ? 0 : g.X[0].size();
        for (auto& x : g.X) {
            std::copy(v.begin() + static_cast<long>(off), v.begin() + static_cast<long>(off + cell), x.begin());
            off += cell;
        }
        for (auto& a : g.A)
            for (auto& comp : a) {
                std::copy(v.begin() + static_cast<long>(off), v.begin() + static_cast<long>(off + cell),
                          comp.begin());
                off += cell;
            }
    }
};

} // namespace

FlowResult integrate_flow(const GridField& g0, const FlowModel& model, const FlowConfig& cfg)
{
    if (cfg.dt <= 0)
        fail(Errc::BadInput, "dt must be positive");
    FlowResult out;
    out.state = g0;
    GridGeom geo{g0.N, g0.h()};
    size_t cell = static_cast<size_t>(g0.N) * g0.N;

    GridField work = g0;
    // d_t X^i = rho^i_I eps^I ; d_t A^I_mu = d_mu(eps^I(x, X)) + C^I_JK A^J_mu eps^K
    auto deriv = [&](const State& s, State& ds) {
        s.write_to(work);
        std::vector<double> pt(2 + static_cast<size_t>(model.n2));
        // composed eps grids
        std::vector<std::vector<double>> E(static_cast<size_t>(model.r2), std::vector<double>(cell));
        for (int a = 0; a < g0.N; ++a)
            for (int b = 0; b < g0.N; ++b) {
                fill_point(work, geo, a, b, pt);
                size_t p = geo.idx(a, b);
                for (int I = 0; I < model.r2; ++I)
                    E[static_cast<size_t>(I)][p] = model.eps[static_cast<size_t>(I)].eval(pt.data());
            }
        ds.v.assign(s.v.size(), 0.0);
        size_t offX = 0;
        size_t offA = static_cast<size_t>(model.n2) * cell;
        for (int a = 0; a < g0.N; ++a)
            for (int b = 0; b < g0.N; ++b) {
                fill_point(work, geo, a, b, pt);
                size_t p = geo.idx(a, b);
                for (int i = 0; i < model.n2; ++i) {
                    double v = 0.0;
                    for (int I = 0; I < model.r2; ++I)
                        v += model.rho[static_cast<size_t>(I)][static_cast<size_t>(i)].eval(pt.data()) *
                             E[static_cast<size_t>(I)][p];
                    ds.v[offX + static_cast<size_t>(i) * cell + p] = v;
                }
                for (int I = 0; I < model.r2; ++I)
                    for (int mu = 0; mu < 2; ++mu) {
                        double v = central(E[static_cast<size_t>(I)], geo, a, b, mu);
                        for (int J = 0; J < model.r2; ++J)
                            for (int K = 0; K < model.r2; ++K)
                                v += model.C[static_cast<size_t>(I)][static_cast<size_t>(J)]
                                            [static_cast<size_t>(K)]
                                         .eval(pt.data()) *
                                     work.A[static_cast<size_t>(J)][static_cast<size_t>(mu)][p] *
                                     E[static_cast<size_t>(K)][p];
                        ds.v[offA + (static_cast<size_t>(I) * 2 + static_cast<size_t>(mu)) * cell + p] = v;
                    }
            }
    };

    auto record = [&](double t, const GridField& g) {
        Residuals r = residuals(g, model);
        double act = model.has_poisson() ? action_numeric(g, model) : 0.0;
        out.trace.push_back({t, r, act});
    };

    State y = State::from(g0);
    record(0.0, g0);
    int steps = static_cast<int>(std::llround(cfg.T / cfg.dt));
    State k1, k2, k3, k4, tmp;
    GridField snapshot = g0;
    for (int s = 1; s <= steps; ++s) {
        deriv(y, k1);
        tmp.v = y.v;
        for (size_t i = 0; i < y.v.size(); ++i)
            tmp.v[i] = y.v[i] + 0.5 * cfg.dt * k1.v[i];
        deriv(tmp, k2);
        for (size_t i = 0; i < y.v.size(); ++i)
            tmp.v[i] = y.v[i] + 0.5 * cfg.dt * k2.v[i];
        deriv(tmp, k3);
        for (size_t i = 0; i < y.v.size(); ++i)
            tmp.v[i] = y.v[i] + cfg.dt * k3.v[i];
        deriv(tmp, k4);
        State next;
        next.v.resize(y.v.size());
        for (size_t i = 0; i < y.v.size(); ++i)
            next.v[i] = y.v[i] + (cfg.dt / 6.0) * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
        bool finite = true;
        for (double x : next.v)
            if (!std::isfinite(x)) {
                finite = false;
                break;
            }
        if (!finite) {
            out.completed = false;
            break;
        }
        y = std::move(next);
        y.write_to(snapshot);
        if (s % cfg.record_every == 0 || s == steps)
            record(s * cfg.dt, snapshot);
        out.state = snapshot;
    }
    return out;
}

} // namespace lalg
