#include "spectral/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "spectral/errors.hpp"

namespace spectral::io
{
namespace
{
void allow_keys(json const& j,
                std::initializer_list<char const*> keys,
                char const* where)
{
    if (!j.is_object())
        throw SchemaError(std::string(where) + " must be an object");
    for (auto const& [k, v] : j.items())
    {
        bool ok = false;
        for (auto const* name : keys)
            ok = ok || k == name;
        if (!ok)
            throw SchemaError("unknown field \"" + k + "\" in " + where);
    }
}

json const& require(json const& j, char const* key, char const* where)
{
    if (!j.contains(key))
        throw SchemaError(std::string("missing field \"") + key + "\" in "
                          + where);
    return j.at(key);
}

bool is_rational_json(json const& j)
{
    return j.is_string() || j.is_number_integer();
}

// Coordinates as exact values when possible, doubles otherwise
struct Coord
{
    std::optional<Rational> exact;
    double approx{0};
};

Coord parse_coord(json const& j)
{
    if (is_rational_json(j))
    {
        auto r = parse_rational(j);
        return {r, r.to_double()};
    }
    if (j.is_number())
        return {std::nullopt, j.get<double>()};
    throw SchemaError("coordinate must be a number or rational string");
}

json margins_json(std::vector<Margin> const& ms)
{
    json out = json::object();
    for (auto const& m : ms)
        out[m.name] = {{"value", m.value}, {"near", m.near}};
    return out;
}

json point_json(PointValue const& p)
{
    if (p.exact)
        return to_json(*p.exact);
    return json(p.approx);
}
}  // namespace

//---------------------------------------------------------------------------//
Rational parse_rational(json const& j)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_string())
    {
        try
        {
            return Rational::parse(j.get<std::string>());
        }
        catch (std::invalid_argument const& e)
        {
            throw SchemaError(std::string("bad rational: ") + e.what());
        }
    }
    if (j.is_number())
        throw IrrationalData("expected a rational string, got "
                             + j.dump());
    throw SchemaError("expected a rational, got " + j.dump());
}

json to_json(Rational const& r)
{
    return r.str();
}

RVec parse_rvec(json const& j)
{
    if (!j.is_array())
        throw SchemaError("expected an array of rationals");
    RVec out;
    for (auto const& x : j)
        out.push_back(parse_rational(x));
    return out;
}

json to_json(RVec const& v)
{
    json out = json::array();
    for (auto const& x : v)
        out.push_back(to_json(x));
    return out;
}

Box parse_box(json const& j)
{
    allow_keys(j, {"lo", "hi"}, "box");
    try
    {
        return make_box(parse_rvec(require(j, "lo", "box")),
                        parse_rvec(require(j, "hi", "box")));
    }
    catch (std::invalid_argument const& e)
    {
        throw SchemaError(e.what());
    }
}

json to_json(Box const& b)
{
    return {{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}};
}

Domain parse_domain(json const& j)
{
    if (!j.is_object() || j.size() != 1)
        throw SchemaError("domain must be an object with exactly one of "
                          "boxes, intervals, product, cube");
    if (j.contains("boxes"))
    {
        std::vector<Box> boxes;
        for (auto const& b : j.at("boxes"))
            boxes.push_back(parse_box(b));
        if (boxes.empty())
            throw SchemaError("domain needs at least one box");
        return Domain::from_boxes(std::move(boxes));
    }
    if (j.contains("intervals"))
    {
        std::vector<std::pair<Rational, Rational>> iv;
        for (auto const& p : j.at("intervals"))
        {
            if (!p.is_array() || p.size() != 2)
                throw SchemaError("interval must be a pair");
            iv.emplace_back(parse_rational(p[0]), parse_rational(p[1]));
        }
        if (iv.empty())
            throw SchemaError("domain needs at least one interval");
        try
        {
            return Domain::intervals(std::move(iv));
        }
        catch (std::invalid_argument const& e)
        {
            throw SchemaError(e.what());
        }
    }
    if (j.contains("product"))
    {
        std::vector<Domain> f;
        for (auto const& p : j.at("product"))
            f.push_back(parse_domain(p));
        if (f.empty())
            throw SchemaError("product needs at least one factor");
        return Domain::product(std::move(f));
    }
    if (j.contains("cube"))
    {
        auto const& d = j.at("cube");
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw SchemaError("cube dimension must be a positive integer");
        return Domain::cube(d.get<std::size_t>());
    }
    throw SchemaError("unknown domain form " + j.begin().key());
}

json to_json(Domain const& u)
{
    if (auto const& f = u.product_factors())
    {
        json out = json::array();
        for (auto const& x : *f)
            out.push_back(to_json(x));
        return {{"product", out}};
    }
    if (u.dim() == 1)
    {
        json out = json::array();
        for (auto const& b : u.boxes())
            out.push_back({to_json(b.lo[0]), to_json(b.hi[0])});
        return {{"intervals", out}};
    }
    json out = json::array();
    for (auto const& b : u.boxes())
        out.push_back(to_json(b));
    return {{"boxes", out}};
}

//---------------------------------------------------------------------------//
PointSetSpec parse_pointset(json const& j)
{
    if (!j.is_object())
        throw SchemaError("pointset must be an object");
    auto const type = require(j, "type", "pointset").get<std::string>();
    PointSetSpec out;
    out.source = j;

    if (type == "periodic")
    {
        allow_keys(j, {"type", "basis", "reps", "window"}, "pointset");
        std::vector<RVec> cols;
        for (auto const& c : require(j, "basis", "pointset"))
            cols.push_back(parse_rvec(c));
        if (cols.empty())
            throw SchemaError("basis must not be empty");
        for (auto const& c : cols)
            if (c.size() != cols.size())
                throw DimensionMismatch("basis must be square");
        std::vector<RVec> reps;
        for (auto const& r : require(j, "reps", "pointset"))
            reps.push_back(parse_rvec(r));
        try
        {
            out.periodic.emplace(Lattice(RMatrix::from_columns(cols)), reps);
        }
        catch (std::invalid_argument const& e)
        {
            throw SchemaError(e.what());
        }
        catch (std::domain_error const& e)
        {
            throw SchemaError(e.what());
        }
        if (j.contains("window"))
            out.windowed = window(*out.periodic, parse_box(j.at("window")));
        return out;
    }
    if (type == "window")
    {
        allow_keys(j, {"type", "points", "window"}, "pointset");
        WindowSet w;
        w.window = parse_box(require(j, "window", "pointset"));
        w.dim = w.window.dim();
        std::vector<RVec> exact;
        bool all_exact = true;
        for (auto const& p : require(j, "points", "pointset"))
        {
            if (!p.is_array() || p.size() != w.dim)
                throw DimensionMismatch("point dimension");
            std::vector<double> approx;
            RVec ex;
            for (auto const& c : p)
            {
                auto coord = parse_coord(c);
                approx.push_back(coord.approx);
                if (coord.exact)
                    ex.push_back(*coord.exact);
                else
                    all_exact = false;
            }
            if (!w.window.contains(std::span<double const>(approx)))
                throw SchemaError("point outside the window");
            w.points.push_back(std::move(approx));
            exact.push_back(std::move(ex));
        }
        if (all_exact)
            w.exact = std::move(exact);
        out.windowed = std::move(w);
        return out;
    }
    if (type == "shifted_columns")
    {
        allow_keys(j, {"type", "shifts", "window"}, "pointset");
        auto const box = parse_box(require(j, "window", "pointset"));
        auto const& sj = require(j, "shifts", "pointset");
        if (!sj.is_array() || sj.empty())
            throw SchemaError("shifts must be a nonempty array");
        std::vector<Rational> rs;
        std::vector<double> ds;
        bool all_exact = true;
        for (auto const& s : sj)
        {
            auto c = parse_coord(s);
            ds.push_back(c.approx);
            if (c.exact)
                rs.push_back(*c.exact);
            else
                all_exact = false;
        }
        if (all_exact)
        {
            out.windowed = shifted_column_cubes(rs, box);
            out.periodic = shifted_columns_periodic(rs);
        }
        else
        {
            out.windowed = shifted_column_cubes(ds, box);
        }
        return out;
    }
    throw SchemaError("unknown pointset type \"" + type + "\"");
}

json to_json(PeriodicSet const& s)
{
    json basis = json::array();
    for (std::size_t j = 0; j < s.dim(); ++j)
        basis.push_back(to_json(s.lattice().basis().column(j)));
    json reps = json::array();
    for (auto const& a : s.reps())
        reps.push_back(to_json(a));
    return {{"type", "periodic"}, {"basis", basis}, {"reps", reps}};
}

json to_json(WindowSet const& s)
{
    json pts = json::array();
    for (std::size_t i = 0; i < s.size(); ++i)
        pts.push_back(s.exact ? to_json((*s.exact)[i]) : json(s.points[i]));
    return {{"type", "window"}, {"points", pts}, {"window", to_json(s.window)}};
}

//---------------------------------------------------------------------------//
json to_json(ZeroSet const& z)
{
    char const* form = std::holds_alternative<ProductHyperplanes>(z.form)
                           ? "product_hyperplanes"
                       : std::holds_alternative<Roots1D>(z.form)
                           ? "roots_1d"
                           : "numeric_only";
    json out = {{"form", form}};
    if (auto const* n = std::get_if<NumericOnly>(&z.form))
    {
        out["tol"] = n->tol;
        return out;
    }
    json axes = json::array();
    for (auto const& a : z.axes())
    {
        json irr = json::array();
        for (auto const& p : a.irrational_phases)
            irr.push_back({{"approx", p.approx}, {"error_bound", p.error_bound}});
        json ph = json::array();
        for (auto const& p : a.rational_phases)
            ph.push_back(to_json(p));
        axes.push_back({{"period", to_json(a.period)},
                        {"phases", ph},
                        {"irrational_phases", irr}});
    }
    out["axes"] = axes;
    return out;
}

json to_json(TailBound const& t)
{
    return {{"radius", t.radius}, {"bound", t.bound}, {"rigorous", t.rigorous}};
}

json to_json(Multiplicity const& m)
{
    json defects = json::array();
    for (std::size_t i = 0; i < m.defect_cells.size() && i < 16; ++i)
        defects.push_back({{"cell", to_json(m.defect_cells[i].cell)},
                           {"level", m.defect_cells[i].level}});
    return {{"period", to_json(m.period)},
            {"target", m.target},
            {"level_min", m.level_min},
            {"level_max", m.level_max},
            {"cells", m.cells.size()},
            {"defect_cells", m.defect_cells.size()},
            {"first_defects", defects}};
}

json to_json(DualWeight const& w)
{
    json out = {{"xi", to_json(w.xi)},
                {"weight", {w.weight.real(), w.weight.imag()}},
                {"order", w.order}};
    out["exact_zero"] = w.exact_zero ? json(*w.exact_zero) : json(nullptr);
    return out;
}

json to_json(Witness const& w)
{
    json out = {{"kind", witness_kind(w)}};
    std::visit(
        [&](auto const& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, DifferenceWitness>)
            {
                out["lambda"] = point_json(x.lambda);
                out["mu"] = point_json(x.mu);
                out["difference"] = point_json(x.difference);
                out["abs_ft"] = x.abs_ft;
            }
            else if constexpr (std::is_same_v<T, DualWitness>)
            {
                out["dual"] = to_json(x.dual);
            }
            else if constexpr (std::is_same_v<T, DensityWitness>)
            {
                out["density"] = to_json(x.density);
                out["required"] = to_json(x.required);
            }
            else if constexpr (std::is_same_v<T, CellWitness>)
            {
                out["cell"] = to_json(x.cell.cell);
                out["level"] = x.cell.level;
                out["target"] = x.target;
            }
            else if constexpr (std::is_same_v<T, SampleWitness>)
            {
                out["x"] = x.x;
                out["value"] = x.value;
                out["defect"] = x.defect;
            }
            else if constexpr (std::is_same_v<T, RootWitness>)
            {
                out["box"] = x.box;
                out["axis"] = x.axis;
                out["root"] = point_json(x.root);
                out["error_bound"] = x.error_bound;
            }
            else if constexpr (std::is_same_v<T, MeasureWitness>)
            {
                out["which"] = x.which;
                out["measure"] = to_json(x.measure);
                out["required"] = to_json(x.required);
            }
            else if constexpr (std::is_same_v<T, DisagreementWitness>)
            {
                out["first_check"] = x.first_check;
                out["first"] = to_string(x.first);
                out["second_check"] = x.second_check;
                out["second"] = to_string(x.second);
            }
            else if constexpr (std::is_same_v<T, SetDifferenceWitness>)
            {
                auto sets = [](auto const& v) {
                    json a = json::array();
                    for (auto const& reps : v)
                    {
                        json r = json::array();
                        for (auto const& p : reps)
                            r.push_back(to_json(p));
                        a.push_back(r);
                    }
                    return a;
                };
                out["only_first"] = sets(x.only_first);
                out["only_second"] = sets(x.only_second);
            }
        },
        w);
    return out;
}

json to_json(Verdict const& v)
{
    json out = {{"status", to_string(v.status)}};
    out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
    out["margins"] = margins_json(v.margins);
    out["notes"] = v.notes;
    return out;
}

json to_json(SpectrumCertificate const& c)
{
    json pts = json::array();
    for (auto const& w : c.dual_points)
        pts.push_back(to_json(w));
    return {{"density", to_json(c.density)},
            {"dual_points_checked", pts},
            {"all_exact", c.all_exact}};
}

json to_json(SearchSolution const& s)
{
    json reps = json::array();
    for (auto const& a : s.set.reps())
        reps.push_back(to_json(a));
    json out = {{"reps", reps}, {"verdict", to_json(s.verdict)}};
    if (s.certificate)
        out["certificate"] = to_json(*s.certificate);
    return out;
}

Status parse_status(std::string const& s)
{
    if (s == "holds")
        return Status::holds;
    if (s == "fails")
        return Status::fails;
    if (s == "inconclusive")
        return Status::inconclusive;
    throw SchemaError("unknown status \"" + s + "\"");
}

VerdictRecord parse_verdict(json const& j)
{
    allow_keys(j, {"status", "witness", "margins", "notes", "certificate"},
               "verdict");
    VerdictRecord r;
    r.status = parse_status(require(j, "status", "verdict").get<std::string>());
    if (j.contains("margins"))
        for (auto const& [k, m] : j.at("margins").items())
            r.margins.push_back(
                {k, m.at("value").get<double>(), m.at("near").get<bool>()});
    if (j.contains("notes"))
        r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("witness") && !j.at("witness").is_null())
        r.witness = j.at("witness");
    return r;
}

//---------------------------------------------------------------------------//
namespace
{
TileSpec parse_tile(json const& j)
{
    allow_keys(j, {"kind", "domain"}, "tile");
    auto const kind = require(j, "kind", "tile").get<std::string>();
    TileSpec t{TileSpec::Kind::indicator,
               parse_domain(require(j, "domain", "tile"))};
    if (kind == "power_spectrum")
        t.kind = TileSpec::Kind::power_spectrum;
    else if (kind != "indicator")
        throw SchemaError("tile kind must be indicator or power_spectrum");
    return t;
}

Parameters parse_parameters(json const& j)
{
    allow_keys(j,
               {"tol", "radius", "grid", "period", "grid_step", "candidates",
                "rho", "normalize"},
               "parameters");
    Parameters p;
    if (j.contains("tol"))
        p.tol = j.at("tol").get<double>();
    if (j.contains("radius"))
        p.radius = j.at("radius").get<double>();
    if (j.contains("grid"))
    {
        if (!j.at("grid").is_number_unsigned() || j.at("grid").get<int>() < 1)
            throw SchemaError("grid must be a positive integer");
        p.grid = j.at("grid").get<std::size_t>();
    }
    if (j.contains("period"))
        p.period = is_rational_json(j.at("period"))
                       ? RVec{parse_rational(j.at("period"))}
                       : parse_rvec(j.at("period"));
    if (j.contains("grid_step"))
        p.grid_step = parse_rational(j.at("grid_step"));
    if (j.contains("candidates"))
    {
        std::vector<RVec> c;
        for (auto const& x : j.at("candidates"))
            c.push_back(is_rational_json(x) ? RVec{parse_rational(x)}
                                            : parse_rvec(x));
        p.candidates = std::move(c);
    }
    if (j.contains("rho"))
        p.rho = j.at("rho").get<double>();
    if (j.contains("normalize"))
        p.normalize = j.at("normalize").get<bool>();
    return p;
}
}  // namespace

ProblemFile parse_problem(json const& j)
{
    allow_keys(j,
               {"version", "domain", "region", "pointset", "tiles",
                "parameters"},
               "problem file");
    ProblemFile p;
    try
    {
        if (j.contains("version"))
            p.version = j.at("version").get<int>();
        if (p.version != 1)
            throw SchemaError("unsupported version "
                              + std::to_string(p.version));
        if (j.contains("domain"))
            p.domain = parse_domain(j.at("domain"));
        if (j.contains("region"))
            p.region = parse_domain(j.at("region"));
        if (j.contains("pointset"))
            p.pointset = parse_pointset(j.at("pointset"));
        if (j.contains("tiles"))
        {
            auto const& t = j.at("tiles");
            allow_keys(t, {"f", "g"}, "tiles");
            p.tiles = TileSpecs{parse_tile(require(t, "f", "tiles")),
                                parse_tile(require(t, "g", "tiles"))};
        }
        if (j.contains("parameters"))
            p.parameters = parse_parameters(j.at("parameters"));
    }
    catch (json::exception const& e)
    {
        throw SchemaError(e.what());
    }
    return p;
}

ProblemFile load_problem(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open " + path);
    json j;
    try
    {
        j = json::parse(in);
    }
    catch (json::exception const& e)
    {
        throw SchemaError(path + ": " + e.what());
    }
    return parse_problem(j);
}

}  // namespace spectral::io
