#include "lalg/io.hpp"

#include "lalg/error.hpp"

#include <fstream>

namespace lalg {

void expect_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where)
{
    if (!j.is_object())
        fail(Errc::BadInput, where + ": expected an object");
    for (auto& [k, v] : j.items()) {
        bool known = false;
        for (auto* key : keys)
            if (k == key) {
                known = true;
                break;
            }
        if (!known)
            fail(Errc::BadInput, where + ": unknown field '" + k + "'");
    }
}

namespace {

std::string str_at(const Json& j, const char* key, const std::string& where)
{
    if (!j.contains(key) || !j[key].is_string())
        fail(Errc::BadInput, where + ": missing string field '" + key + "'");
    return j[key].get<std::string>();
}

std::set<VarId> to_set(const std::vector<VarId>& v)
{
    return {v.begin(), v.end()};
}

std::vector<VarId> declare_coords(VarPool& pool, const Json& arr, VarKind kind, const std::string& where)
{
    if (!arr.is_array())
        fail(Errc::BadInput, where + ": expected an array of coordinate names");
    std::vector<VarId> out;
    for (auto& c : arr) {
        if (!c.is_string())
            fail(Errc::BadInput, where + ": coordinate names must be strings");
        out.push_back(pool.declare(c.get<std::string>(), kind));
    }
    return out;
}

int frame_index(const Algebroid& alg, const std::string& name, const std::string& where)
{
    for (int I = 0; I < alg.rank(); ++I)
        if (alg.frame_name(I) == name)
            return I;
    fail(Errc::BadInput, where + ": unknown frame name '" + name + "'");
}

Algebroid parse_algebroid(const Json& j, VarPool& pool, VarKind kind, const std::string& where)
{
    expect_keys(j, {"base_coords", "frame", "anchor", "structure"}, where);
    if (!j.contains("base_coords") || !j.contains("frame"))
        fail(Errc::BadInput, where + ": base_coords and frame are required");
    std::vector<VarId> base = declare_coords(pool, j["base_coords"], kind, where);
    std::vector<std::string> frame;
    for (auto& f : j["frame"])
        frame.push_back(f.get<std::string>());
    Algebroid E(base, frame);
    auto allowed = to_set(base);
    if (j.contains("anchor")) {
        const Json& a = j["anchor"];
        if (!a.is_array() || a.size() != frame.size())
            fail(Errc::BadInput, where + ": anchor must have one row per frame element");
        for (size_t I = 0; I < a.size(); ++I) {
            if (!a[I].is_array() || a[I].size() != base.size())
                fail(Errc::BadInput, where + ": anchor row has wrong length");
            for (size_t i = 0; i < base.size(); ++i)
                E.set_anchor(static_cast<int>(I), static_cast<int>(i),
                             parse_poly(a[I][i].get<std::string>(), pool, allowed));
        }
    }
    if (j.contains("structure")) {
        for (auto& entry : j["structure"]) {
            expect_keys(entry, {"upper", "lower", "coeff"}, where + ".structure");
            int I = frame_index(E, str_at(entry, "upper", where), where);
            if (!entry.contains("lower") || !entry["lower"].is_array() || entry["lower"].size() != 2)
                fail(Errc::BadInput, where + ": structure entry needs a lower pair");
            int J = frame_index(E, entry["lower"][0].get<std::string>(), where);
            int K = frame_index(E, entry["lower"][1].get<std::string>(), where);
            Poly c = parse_poly(str_at(entry, "coeff", where), pool, allowed);
            // accumulate to honor the pair order's sign
            c += E.structure(I, J, K);
            E.set_structure(I, J, K, c);
        }
    }
    return E;
}

std::vector<std::vector<Poly>> parse_matrix(const Json& j, const VarPool& pool,
                                            const std::optional<std::set<VarId>>& allowed, size_t rows,
                                            size_t cols, const std::string& where)
{
    if (!j.is_array() || j.size() != rows)
        fail(Errc::BadInput, where + ": matrix has wrong number of rows");
    std::vector<std::vector<Poly>> out;
    for (auto& row : j) {
        if (!row.is_array() || row.size() != cols)
            fail(Errc::BadInput, where + ": matrix row has wrong length");
        std::vector<Poly> r;
        for (auto& e : row)
            r.push_back(parse_poly(e.get<std::string>(), pool, allowed));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

std::vector<Poly> parse_poly_list(const Json& j, const VarPool& pool,
                                  const std::optional<std::set<VarId>>& allowed, const std::string& where)
{
    if (!j.is_array())
        fail(Errc::BadInput, where + ": expected an array of expressions");
    std::vector<Poly> out;
    for (auto& e : j) {
        if (!e.is_string())
            fail(Errc::BadInput, where + ": expressions must be strings");
        out.push_back(parse_poly(e.get<std::string>(), pool, allowed));
    }
    return out;
}

const Algebroid& LoadedBundle::algebroid(const std::string& name) const
{
    auto it = algebroids.find(name);
    if (it == algebroids.end())
        fail(Errc::BadInput, "unknown algebroid '" + name + "'");
    return it->second;
}

const BundleMap& LoadedBundle::map(const std::string& name) const
{
    auto it = maps.find(name);
    if (it == maps.end())
        fail(Errc::BadInput, "unknown map '" + name + "'");
    return it->second;
}

LoadedBundle load_bundle_json(const Json& doc)
{
    expect_keys(doc,
                {"version", "algebroids", "maps", "poisson", "psm", "gauge_closure", "frame_covariance",
                 "psm_variation", "flow"},
                "bundle");
    if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
        fail(Errc::BadInput, "bundle: missing or unsupported \"version\" (expected 1)");

    LoadedBundle b;
    b.pool = std::make_unique<VarPool>();
    b.raw = doc;

    // source algebroids get source-coordinate variables
    std::set<std::string> source_names;
    if (doc.contains("maps"))
        for (auto& [name, m] : doc["maps"].items()) {
            (void)name;
            if (m.contains("source") && m["source"].is_string())
                source_names.insert(m["source"].get<std::string>());
        }

    if (doc.contains("algebroids")) {
        for (auto& [name, aj] : doc["algebroids"].items()) {
            VarKind kind = source_names.count(name) ? VarKind::SourceCoord : VarKind::TargetCoord;
            b.algebroids.emplace(name, parse_algebroid(aj, *b.pool, kind, "algebroid '" + name + "'"));
        }
    }

    if (doc.contains("maps")) {
        for (auto& [name, mj] : doc["maps"].items()) {
            std::string where = "map '" + name + "'";
            expect_keys(mj, {"source", "target", "phi0", "A", "phi_related"}, where);
            const Algebroid& src = b.algebroid(str_at(mj, "source", where));
            const Algebroid& tgt = b.algebroid(str_at(mj, "target", where));
            auto allowed = to_set(src.base());
            std::vector<Poly> phi0;
            if (mj.contains("phi0"))
                phi0 = parse_poly_list(mj["phi0"], *b.pool, allowed, where + ".phi0");
            if (static_cast<int>(phi0.size()) != tgt.dim())
                fail(Errc::BadInput, where + ": phi0 must have " + std::to_string(tgt.dim()) + " entries");
            std::vector<EForm> A;
            if (!mj.contains("A") || !mj["A"].is_array() ||
                mj["A"].size() != static_cast<size_t>(tgt.rank()))
                fail(Errc::BadInput, where + ": A must have one row per target frame element");
            for (auto& row : mj["A"]) {
                std::vector<Poly> comps = parse_poly_list(row, *b.pool, allowed, where + ".A");
                if (static_cast<int>(comps.size()) != src.rank())
                    fail(Errc::BadInput, where + ": A row has wrong length");
                EForm a(src);
                for (size_t al = 0; al < comps.size(); ++al)
                    a.add_term({static_cast<int>(al)}, comps[al]);
                A.push_back(std::move(a));
            }
            b.maps.emplace(name, BundleMap(src, tgt, std::move(phi0), std::move(A)));
            if (mj.contains("phi_related")) {
                std::vector<std::pair<Section, Section>> pairs;
                for (auto& pj : mj["phi_related"]) {
                    expect_keys(pj, {"s1", "s2"}, where + ".phi_related");
                    Section s1{parse_poly_list(pj["s1"], *b.pool, allowed, where + ".s1")};
                    Section s2{parse_poly_list(pj["s2"], *b.pool, to_set(tgt.base()), where + ".s2")};
                    if (s1.rank() != src.rank() || s2.rank() != tgt.rank())
                        fail(Errc::BadInput, where + ": section has wrong rank");
                    pairs.emplace_back(std::move(s1), std::move(s2));
                }
                b.related_pairs.emplace(name, std::move(pairs));
            }
        }
    }

    if (doc.contains("poisson")) {
        const Json& pj = doc["poisson"];
        expect_keys(pj, {"coords", "matrix"}, "poisson");
        std::vector<VarId> coords;
        size_t n = pj.contains("matrix") ? pj["matrix"].size() : 0;
        if (pj.contains("coords"))
            coords = declare_coords(*b.pool, pj["coords"], VarKind::TargetCoord, "poisson");
        else
            for (size_t i = 0; i < n; ++i)
                coords.push_back(b.pool->declare("X" + std::to_string(i + 1), VarKind::TargetCoord));
        b.poisson_coords = coords;
        b.poisson = parse_matrix(pj["matrix"], *b.pool, to_set(coords), coords.size(), coords.size(),
                                 "poisson.matrix");
    }

    if (doc.contains("psm")) {
        const Json& pj = doc["psm"];
        expect_keys(pj, {"sigma_coords", "coords", "poisson"}, "psm");
        if (!pj.contains("sigma_coords"))
            fail(Errc::BadInput, "psm: sigma_coords is required");
        std::vector<VarId> sigma = declare_coords(*b.pool, pj["sigma_coords"], VarKind::SourceCoord, "psm");
        size_t n = pj.contains("poisson") ? pj["poisson"].size() : 0;
        std::vector<VarId> coords;
        if (pj.contains("coords"))
            coords = declare_coords(*b.pool, pj["coords"], VarKind::TargetCoord, "psm");
        else
            for (size_t i = 0; i < n; ++i)
                coords.push_back(b.pool->declare("X" + std::to_string(i + 1), VarKind::TargetCoord));
        auto P = parse_matrix(pj["poisson"], *b.pool, to_set(coords), coords.size(), coords.size(),
                              "psm.poisson");
        b.psm = std::make_unique<PsmModel>(sigma, coords, P, *b.pool);
    }

    return b;
}

LoadedBundle load_bundle_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(Errc::BadInput, "cannot open '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const std::exception& e) {
        fail(Errc::BadInput, "JSON parse error in '" + path + "': " + e.what());
    }
    return load_bundle_json(doc);
}

GaugeParam parse_gauge_param(const Json& j, LoadedBundle& b, const Algebroid& source,
                             const Algebroid& target)
{
    expect_keys(j, {"eps1", "eps2"}, "gauge parameter");
    GaugeParam eps;
    if (j.contains("eps1") && !j["eps1"].empty()) {
        auto allowed = std::set<VarId>(source.base().begin(), source.base().end());
        eps.eps1.comp = parse_poly_list(j["eps1"], *b.pool, allowed, "eps1");
    }
    std::set<VarId> allowed(source.base().begin(), source.base().end());
    allowed.insert(target.base().begin(), target.base().end());
    if (!j.contains("eps2"))
        fail(Errc::BadInput, "gauge parameter: eps2 is required");
    eps.eps2 = parse_poly_list(j["eps2"], *b.pool, allowed, "eps2");
    if (static_cast<int>(eps.eps2.size()) != target.rank())
        fail(Errc::BadInput, "gauge parameter: eps2 has wrong rank");
    return eps;
}

Connection parse_connection(const Json& j, const LoadedBundle& b, const Algebroid& target)
{
    expect_keys(j, {"gamma"}, "connection");
    Connection g = Connection::zero(target);
    auto allowed = std::set<VarId>(target.base().begin(), target.base().end());
    if (j.contains("gamma"))
        for (auto& entry : j["gamma"]) {
            expect_keys(entry, {"upper", "base", "lower", "coeff"}, "connection.gamma");
            int I = frame_index(target, str_at(entry, "upper", "connection"), "connection");
            int J = frame_index(target, str_at(entry, "lower", "connection"), "connection");
            std::string base_name = str_at(entry, "base", "connection");
            int i = -1;
            for (int k = 0; k < target.dim(); ++k)
                if (b.pool->name(target.base()[static_cast<size_t>(k)]) == base_name)
                    i = k;
            if (i < 0)
                fail(Errc::BadInput, "connection: unknown base coordinate '" + base_name + "'");
            g.gamma.at(static_cast<size_t>(I)).at(static_cast<size_t>(i)).at(static_cast<size_t>(J)) =
                parse_poly(str_at(entry, "coeff", "connection"), *b.pool, allowed);
        }
    return g;
}

FrameChange parse_frame_change(const Json& j, const LoadedBundle& b, const Algebroid& target)
{
    expect_keys(j, {"B", "B_inv"}, "frame_change");
    auto allowed = std::set<VarId>(target.base().begin(), target.base().end());
    size_t r = static_cast<size_t>(target.rank());
    auto B = parse_matrix(j["B"], *b.pool, allowed, r, r, "frame_change.B");
    auto Binv = parse_matrix(j["B_inv"], *b.pool, allowed, r, r, "frame_change.B_inv");
    return FrameChange(target, std::move(B), std::move(Binv));
}

} // namespace lalg
