#include "spectral/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "spectral/errors.hpp"

namespace spectral
{
char const* to_string(Status s)
{
    switch (s)
    {
        case Status::holds:
            return "holds";
        case Status::fails:
            return "fails";
        case Status::inconclusive:
            return "inconclusive";
    }
    return "?";
}

PointValue PointValue::of(RVec const& v)
{
    return PointValue{to_doubles(v), v};
}

PointValue PointValue::of(std::vector<double> v)
{
    return PointValue{std::move(v), std::nullopt};
}

char const* witness_kind(Witness const& w)
{
    static char const* const names[] = {"difference",
                                        "dual_point",
                                        "density",
                                        "cell",
                                        "sample",
                                        "root",
                                        "measure",
                                        "disagreement",
                                        "set_difference"};
    return names[w.index()];
}

Verdict Verdict::make_holds()
{
    return Verdict{Status::holds, std::nullopt, {}, {}};
}

Verdict Verdict::make_fails(Witness w)
{
    return Verdict{Status::fails, std::move(w), {}, {}};
}

Verdict Verdict::make_inconclusive(Margin near_margin)
{
    near_margin.near = true;
    return Verdict{Status::inconclusive, std::nullopt, {near_margin}, {}};
}

namespace
{
void require_same_dim(std::size_t a, std::size_t b)
{
    if (a != b)
        throw DimensionMismatch("dimension " + std::to_string(a) + " vs "
                                + std::to_string(b));
}

double abs_ft(Domain const& u, std::vector<double> const& xi)
{
    return std::abs(ft_indicator(u, std::span<double const>(xi)));
}

bool has_phase(AxisRoots const& a, Rational const& r)
{
    auto res = mod(r, a.period);
    return std::find(a.rational_phases.begin(), a.rational_phases.end(), res)
           != a.rational_phases.end();
}

// Default window half-width for numeric fallbacks
double default_radius(std::size_t dim)
{
    return dim == 1 ? 1000.0 : dim == 2 ? 60.0 : 12.0;
}

Box centered_box(std::size_t dim, double radius)
{
    auto r = Rational(static_cast<std::int64_t>(std::ceil(radius)));
    return make_box(RVec(dim, -r), RVec(dim, r));
}

Verdict numeric_zero_scan(ZeroSet const& z,
                          std::vector<std::pair<std::vector<double>,
                                                std::vector<double>>> const&
                              pairs,
                          double tol)
{
    // pairs of (lambda, mu); membership of lambda - mu
    bool any_near = false;
    double worst = 0;
    for (auto const& [l, m] : pairs)
    {
        std::vector<double> diff(l.size());
        for (std::size_t j = 0; j < l.size(); ++j)
            diff[j] = l[j] - m[j];
        auto mem = in_zero_set(z, std::span<double const>(diff), tol);
        double v = abs_ft(z.domain, diff);
        worst = std::max(worst, v);
        if (mem == Membership::no)
            return Verdict::make_fails(DifferenceWitness{PointValue::of(l),
                                                         PointValue::of(m),
                                                         PointValue::of(diff),
                                                         v});
        if (mem == Membership::near)
            any_near = true;
    }
    if (any_near)
        return Verdict::make_inconclusive({"max_abs_ft", worst, true});
    auto v = Verdict::make_holds();
    v.margins.push_back({"max_abs_ft", worst, false});
    v.notes.push_back("numeric zero test");
    return v;
}
}  // namespace

//---------------------------------------------------------------------------//
std::optional<RVec> find_coset_escape(std::vector<AxisRoots> const& axes,
                                      RVec const& delta,
                                      RVec const& periods)
{
    std::size_t const d = delta.size();
    require_same_dim(axes.size(), d);
    require_same_dim(periods.size(), d);

    // Per axis: a value that is 0 (B) or any non-root (C)
    std::vector<std::optional<Rational>> zero_pick(d), free_pick(d);
    for (std::size_t j = 0; j < d; ++j)
    {
        Rational const c = periods[j].abs();
        Rational const l = lcm(c, axes[j].period);
        std::int64_t const classes = (l / c).num();
        for (std::int64_t k = 0; k < classes; ++k)
        {
            Rational const r = mod(delta[j] + c * Rational(k), l);
            bool const hit = has_phase(axes[j], r);
            bool const zeroable = r.is_zero();
            if (!hit)
            {
                if (!free_pick[j])
                {
                    // Smallest nonzero member of r + lZ by absolute value
                    Rational v = r.is_zero() ? l : r;
                    if (v - l != Rational(0) && (v - l).abs() < v)
                        v = v - l;
                    free_pick[j] = v;
                }
            }
            else if (zeroable)
            {
                zero_pick[j] = Rational(0);
            }
        }
    }

    bool any_free = false;
    for (std::size_t j = 0; j < d; ++j)
    {
        if (!free_pick[j] && !zero_pick[j])
            return std::nullopt;
        any_free = any_free || free_pick[j].has_value();
    }
    if (!any_free)
        return std::nullopt;

    RVec v(d);
    for (std::size_t j = 0; j < d; ++j)
        v[j] = free_pick[j] ? *free_pick[j] : *zero_pick[j];
    return v;
}

//---------------------------------------------------------------------------//
Verdict check_orthogonality(Domain const& omega,
                            PeriodicSet const& lambda,
                            double tol)
{
    require_same_dim(omega.dim(), lambda.dim());
    auto const z = zero_set(omega);

    if (!z.structured())
    {
        auto w = window(lambda, centered_box(omega.dim(), 4.0));
        auto v = check_orthogonality(omega, w, tol);
        if (v.holds())
        {
            auto out = Verdict::make_inconclusive(
                {"window_radius", 4.0, true});
            out.margins.insert(
                out.margins.end(), v.margins.begin(), v.margins.end());
            out.notes.push_back("unstructured zero set, window test only");
            return out;
        }
        return v;
    }

    auto const rect = normalize_rectangular(lambda);
    auto const axes = z.axes();
    auto const periods = rect.lattice().periods();
    auto const& reps = rect.reps();
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i; j < reps.size(); ++j)
        {
            if (auto v = find_coset_escape(axes, reps[i] - reps[j], periods))
            {
                RVec const mu = reps[j];
                RVec const lam = mu + *v;
                return Verdict::make_fails(
                    DifferenceWitness{PointValue::of(lam),
                                      PointValue::of(mu),
                                      PointValue::of(*v),
                                      std::abs(ft_indicator(omega, *v))});
            }
        }
    auto out = Verdict::make_holds();
    out.notes.push_back("exact coset residue test");
    return out;
}

Verdict check_orthogonality(Domain const& omega,
                            WindowSet const& lambda,
                            double tol)
{
    require_same_dim(omega.dim(), lambda.dim);
    auto const z = zero_set(omega);
    std::size_t const n = lambda.size();

    if (z.structured() && lambda.exact)
    {
        auto const& pts = *lambda.exact;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
            {
                RVec const diff = pts[i] - pts[j];
                if (in_zero_set(z, diff, tol) != Membership::yes)
                    return Verdict::make_fails(
                        DifferenceWitness{PointValue::of(pts[i]),
                                          PointValue::of(pts[j]),
                                          PointValue::of(diff),
                                          std::abs(ft_indicator(omega, diff))});
            }
        auto out = Verdict::make_holds();
        out.notes.push_back("exact pairwise test");
        return out;
    }

    std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            pairs.emplace_back(lambda.points[i], lambda.points[j]);
    return numeric_zero_scan(z, pairs, tol);
}

//---------------------------------------------------------------------------//
std::pair<Verdict, SpectrumCertificate>
check_spectrum_periodic(Domain const& omega,
                        PeriodicSet const& lambda,
                        double tol)
{
    require_same_dim(omega.dim(), lambda.dim());
    if (omega.measure() != Rational(1))
        throw MeasureNotOne("domain measure is " + omega.measure().str());

    SpectrumCertificate cert;
    cert.density = density(lambda);
    if (cert.density != Rational(1))
    {
        auto v = Verdict::make_fails(DensityWitness{cert.density, 1});
        v.margins.push_back({"density", cert.density.to_double(), false});
        return {v, cert};
    }

    auto const body = minkowski_difference(omega, omega);
    auto const xis = enumerate_dual_in(lambda, body);
    std::vector<DualWeight> weights(xis.size());
    auto const n = static_cast<long long>(xis.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i)
    {
        try
        {
            weights[static_cast<std::size_t>(i)]
                = weight(lambda, xis[static_cast<std::size_t>(i)]);
        }
        catch (...)
        {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);

    double const zero_tol = tol * static_cast<double>(lambda.size());
    std::optional<DualWeight> near;
    double max_numeric = 0;
    bool numeric_used = false;
    for (auto const& w : weights)
    {
        if (w.exact_zero)
        {
            if (!*w.exact_zero)
            {
                cert.dual_points = weights;
                cert.all_exact = false;
                for (auto const& x : weights)
                    cert.all_exact = cert.all_exact && x.exact_zero;
                auto v = Verdict::make_fails(DualWitness{w});
                v.margins.push_back({"abs_weight", std::abs(w.weight), false});
                return {v, cert};
            }
            continue;
        }
        numeric_used = true;
        double a = std::abs(w.weight);
        max_numeric = std::max(max_numeric, a);
        if (a >= 10 * zero_tol)
        {
            cert.dual_points = weights;
            cert.all_exact = false;
            auto v = Verdict::make_fails(DualWitness{w});
            v.margins.push_back({"abs_weight", a, false});
            v.notes.push_back("weight decided numerically");
            return {v, cert};
        }
        if (a >= zero_tol && !near)
            near = w;
    }

    cert.dual_points = weights;
    cert.all_exact = !numeric_used;
    if (near)
    {
        auto v = Verdict::make_inconclusive(
            {"abs_weight", std::abs(near->weight), true});
        v.notes.push_back("weight within ten times the tolerance at "
                          + str(near->xi));
        return {v, cert};
    }
    auto v = Verdict::make_holds();
    v.margins.push_back({"dual_points", static_cast<double>(xis.size()),
                         false});
    if (numeric_used)
        v.margins.push_back({"max_numeric_weight", max_numeric, false});
    return {v, cert};
}

//---------------------------------------------------------------------------//
Verdict check_set_tiling(Domain const& omega, PeriodicSet const& lambda)
{
    require_same_dim(omega.dim(), lambda.dim());
    auto const m = multiplicity(omega, lambda, 1);
    Verdict v = m.is_tiling()
                    ? Verdict::make_holds()
                    : Verdict::make_fails(CellWitness{m.defect_cells.front(), 1});
    v.margins.push_back({"level_min", static_cast<double>(m.level_min), false});
    v.margins.push_back({"level_max", static_cast<double>(m.level_max), false});
    return v;
}

//---------------------------------------------------------------------------//
namespace
{
enum class DefectKind
{
    packing,
    tiling
};

Verdict check_defect(Domain const& omega,
                     WindowSet const& s,
                     DefectOptions const& opts,
                     DefectKind kind)
{
    std::size_t const d = omega.dim();
    require_same_dim(d, s.dim);
    GridSpec const grid = opts.grid ? *opts.grid : GridSpec::unit_cell(d);
    require_same_dim(grid.dim(), d);

    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d; ++j)
    {
        dist = std::min(dist, grid.lo[j] - s.window.lo[j].to_double());
        dist = std::min(dist, s.window.hi[j].to_double() - grid.hi[j]);
    }
    if (!(dist > omega.diameter()) || dist < 1.0)
        throw RadiusTooSmall("grid lies within " + std::to_string(dist)
                             + " of the window boundary");

    double const rho = opts.rho ? *opts.rho
                                : std::max(1.0, unit_cube_count(s));
    auto const tail = tail_bound(omega, rho, dist, 0.0);

    auto const values = opts.serial
                            ? kernels::power_sum_serial(omega, s.points, grid)
                            : kernels::power_sum_parallel(omega, s.points, grid);

    std::size_t arg = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        double e = kind == DefectKind::tiling ? std::abs(values[i] - 1.0)
                                              : values[i] - 1.0;
        if (e > worst)
        {
            worst = e;
            arg = i;
        }
    }

    double const allowed = tail.bound + opts.tol;
    char const* name = kind == DefectKind::tiling ? "max_abs_defect"
                                                  : "max_excess";
    std::vector<Margin> margins{{name, worst, false},
                                {"tail_bound", tail.bound, false},
                                {"rho", rho, false},
                                {"samples", static_cast<double>(values.size()),
                                 false}};

    std::vector<double> x(d);
    grid.point(arg, x);
    Verdict v;
    if (worst > allowed)
    {
        v = Verdict::make_fails(SampleWitness{x, values[arg], worst});
    }
    else if (!tail.rigorous)
    {
        margins[0].near = true;
        v.status = Status::inconclusive;
        v.notes.push_back("tail bound is not rigorous for this domain");
    }
    else
    {
        v = Verdict::make_holds();
    }
    v.margins.insert(v.margins.end(), margins.begin(), margins.end());
    v.notes.push_back("max at " + [&] {
        std::string r = "(";
        for (std::size_t j = 0; j < d; ++j)
            r += (j ? ", " : "") + std::to_string(x[j]);
        return r + ")";
    }());
    return v;
}
}  // namespace

Verdict check_packing_defect(Domain const& omega,
                             WindowSet const& lambda,
                             DefectOptions const& opts)
{
    return check_defect(omega, lambda, opts, DefectKind::packing);
}

Verdict check_tiling_defect(Domain const& omega,
                            WindowSet const& lambda,
                            DefectOptions const& opts)
{
    return check_defect(omega, lambda, opts, DefectKind::tiling);
}

//---------------------------------------------------------------------------//
Verdict check_opr(Domain const& omega, Domain const& d, double tol)
{
    require_same_dim(omega.dim(), d.dim());
    auto const z = zero_set(omega);
    auto const body = minkowski_difference(d, d);

    if (z.structured())
    {
        auto const axes = z.axes();
        std::optional<RootWitness> near;
        for (std::size_t b = 0; b < body.boxes.size(); ++b)
        {
            auto const& box = body.boxes[b];
            for (std::size_t j = 0; j < axes.size(); ++j)
            {
                auto const& ax = axes[j];
                Rational const lo = box.lo[j], hi = box.hi[j];
                for (auto const& ph : ax.rational_phases)
                {
                    Rational v = ph
                                 + ax.period
                                       * Rational(((lo - ph) / ax.period).floor()
                                                  + 1);
                    if (v.is_zero())
                        v += ax.period;
                    if (v < hi)
                    {
                        RVec root(axes.size());
                        root[j] = v;
                        auto out = Verdict::make_fails(
                            RootWitness{b, j, PointValue::of(root), 0.0});
                        out.notes.push_back("root " + v.str() + " on axis "
                                            + std::to_string(j));
                        return out;
                    }
                }
                double const p = ax.period.to_double();
                double const flo = lo.to_double(), fhi = hi.to_double();
                for (auto const& ph : ax.irrational_phases)
                {
                    double const e = ph.error_bound;
                    auto k0 = static_cast<long long>(
                        std::floor((flo - ph.approx - e) / p));
                    auto k1 = static_cast<long long>(
                        std::ceil((fhi - ph.approx + e) / p));
                    for (long long k = k0; k <= k1; ++k)
                    {
                        double v = ph.approx + p * static_cast<double>(k);
                        std::vector<double> root(axes.size(), 0.0);
                        root[j] = v;
                        if (v - e > flo && v + e < fhi)
                            return Verdict::make_fails(RootWitness{
                                b, j, PointValue::of(root), e});
                        if (v + e > flo && v - e < fhi && !near)
                            near = RootWitness{b, j, PointValue::of(root), e};
                    }
                }
            }
        }
        if (near)
        {
            auto out = Verdict::make_inconclusive(
                {"root_distance_to_boundary", near->error_bound, true});
            out.notes.push_back("irrational root within its error bound of "
                                "the difference body boundary");
            return out;
        }
        return Verdict::make_holds();
    }

    // Grid scan of |1_Omega^| over each box of D - D
    constexpr std::size_t per_axis = 64;
    std::size_t const dim = omega.dim();
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    for (auto const& box : body.boxes)
    {
        GridSpec g;
        for (std::size_t j = 0; j < dim; ++j)
        {
            double lo = box.lo[j].to_double(), hi = box.hi[j].to_double();
            double h = (hi - lo) / static_cast<double>(per_axis + 1);
            g.lo.push_back(lo + h);
            g.hi.push_back(hi + h);
            g.n.push_back(per_axis);
        }
        std::vector<double> x(dim);
        for (std::size_t i = 0; i < g.size(); ++i)
        {
            g.point(i, x);
            double v = abs_ft(omega, x);
            if (v < best)
            {
                best = v;
                best_x = x;
            }
        }
    }
    if (best <= tol)
    {
        auto out = Verdict::make_fails(RootWitness{
            0, 0, PointValue::of(best_x), 0.0});
        out.margins.push_back({"min_abs_ft", best, false});
        out.notes.push_back("numeric near-zero found by grid scan");
        return out;
    }
    auto out = Verdict::make_inconclusive({"min_abs_ft", best, true});
    out.notes.push_back("no near-zero found by grid scan");
    return out;
}

Verdict check_tight_pair(Domain const& omega, Domain const& d, double tol)
{
    require_same_dim(omega.dim(), d.dim());
    if (omega.measure() != Rational(1))
        return Verdict::make_fails(MeasureWitness{"omega", omega.measure(), 1});
    if (d.measure() != Rational(1))
        return Verdict::make_fails(MeasureWitness{"D", d.measure(), 1});

    auto a = check_opr(omega, d, tol);
    auto b = check_opr(d, omega, tol);
    for (auto* v : {&a, &b})
    {
        if (v->fails())
        {
            v->notes.push_back(v == &a ? "D - D meets Z(1_omega^)"
                                       : "omega - omega meets Z(1_D^)");
            return *v;
        }
    }
    if (!a.holds() || !b.holds())
    {
        Verdict out;
        out.status = Status::inconclusive;
        for (auto* v : {&a, &b})
            out.margins.insert(
                out.margins.end(), v->margins.begin(), v->margins.end());
        return out;
    }
    auto out = Verdict::make_holds();
    out.margins.push_back({"measure_omega", 1.0, false});
    out.margins.push_back({"measure_D", 1.0, false});
    return out;
}

//---------------------------------------------------------------------------//
Verdict check_keller(Domain const& omega,
                     PeriodicSet const& lambda,
                     Domain const& d,
                     double tol)
{
    require_same_dim(omega.dim(), lambda.dim());
    require_same_dim(omega.dim(), d.dim());
    if (!check_tight_pair(omega, d, tol).holds())
        throw PreconditionFailed("(omega, D) is not a tight pair");
    auto const set = lambda.with_origin();
    if (!check_set_tiling(omega, set).holds())
        throw PreconditionFailed("omega + lambda is not a tiling");

    auto const z = zero_set(d);
    if (!z.structured())
    {
        auto w = window(set, centered_box(d.dim(), 4.0));
        bool any_near = false;
        for (auto const& p : w.points)
        {
            if (std::all_of(p.begin(), p.end(),
                            [](double x) { return x == 0.0; }))
                continue;
            auto m = in_zero_set(z, std::span<double const>(p), tol);
            if (m == Membership::no)
                return Verdict::make_fails(DifferenceWitness{
                    PointValue::of(p), PointValue::of(RVec(d.dim())),
                    PointValue::of(p), abs_ft(d, p)});
            any_near = any_near || m == Membership::near;
        }
        auto out = Verdict::make_inconclusive({"window_radius", 4.0, true});
        out.notes.push_back(any_near ? "near-zero values in window"
                                     : "unstructured zero set, window only");
        return out;
    }

    auto const rect = normalize_rectangular(set);
    auto const axes = z.axes();
    auto const periods = rect.lattice().periods();
    for (auto const& a : rect.reps())
        if (auto v = find_coset_escape(axes, a, periods))
            return Verdict::make_fails(
                DifferenceWitness{PointValue::of(*v),
                                  PointValue::of(RVec(d.dim())),
                                  PointValue::of(*v),
                                  std::abs(ft_indicator(d, *v))});
    auto out = Verdict::make_holds();
    out.margins.push_back(
        {"cosets", static_cast<double>(rect.reps().size()), false});
    return out;
}

//---------------------------------------------------------------------------//
namespace
{
struct TileOutcome
{
    Verdict packing;
    Verdict tiling;
};

char const* kind_name(TileSpec::Kind k)
{
    return k == TileSpec::Kind::indicator ? "indicator" : "power_spectrum";
}

TileOutcome evaluate_tile(TileSpec const& t,
                          PeriodicSet const& lambda,
                          double tol)
{
    if (t.kind == TileSpec::Kind::indicator)
    {
        auto m = multiplicity(t.domain, lambda, 1);
        Verdict pack = m.is_packing()
                           ? Verdict::make_holds()
                           : Verdict::make_fails(
                               CellWitness{m.defect_cells.front(), 1});
        return {pack, check_set_tiling(t.domain, lambda)};
    }
    Verdict pack = check_orthogonality(t.domain, lambda, tol);
    if (!zero_set(t.domain).structured())
    {
        auto const r = default_radius(t.domain.dim());
        auto w = window(lambda, centered_box(t.domain.dim(), r + 1.0));
        DefectOptions o;
        o.tol = tol;
        pack = check_packing_defect(t.domain, w, o);
    }
    return {pack, check_spectrum_periodic(t.domain, lambda, tol).first};
}
}  // namespace

Verdict transfer_harness(TileSpec const& f,
                         TileSpec const& g,
                         PeriodicSet const& lambda,
                         double tol)
{
    require_same_dim(f.domain.dim(), lambda.dim());
    require_same_dim(g.domain.dim(), lambda.dim());
    // Both forms integrate to |Omega| (Parseval for the power spectrum)
    Rational const fi = f.domain.measure(), gi = g.domain.measure();
    if (fi != gi || fi != Rational(1))
        throw IntegralMismatch("integrals " + fi.str() + " and " + gi.str()
                               + " must both equal 1");

    auto const a = evaluate_tile(f, lambda, tol);
    auto const b = evaluate_tile(g, lambda, tol);
    if (!a.packing.holds() || !b.packing.holds())
        throw PreconditionFailed("both functions must pack with lambda");

    if (a.tiling.status == Status::inconclusive
        || b.tiling.status == Status::inconclusive)
    {
        Verdict out;
        out.status = Status::inconclusive;
        for (auto const* v : {&a.tiling, &b.tiling})
            out.margins.insert(
                out.margins.end(), v->margins.begin(), v->margins.end());
        if (std::none_of(out.margins.begin(), out.margins.end(),
                         [](Margin const& m) { return m.near; }))
            out.margins.push_back({"undecided_tiling", 1.0, true});
        return out;
    }
    if (a.tiling.status != b.tiling.status)
        return Verdict::make_fails(
            DisagreementWitness{std::string("f tiling (") + kind_name(f.kind)
                                    + ")",
                                a.tiling.status,
                                std::string("g tiling (") + kind_name(g.kind)
                                    + ")",
                                b.tiling.status});
    auto out = Verdict::make_holds();
    out.notes.push_back(a.tiling.holds() ? "both tile" : "neither tiles");
    return out;
}

//---------------------------------------------------------------------------//
Verdict check_opr_measure_bound(Domain const& omega,
                                PeriodicSet const& lambda,
                                Domain const& d,
                                double tol)
{
    require_same_dim(omega.dim(), d.dim());
    if (omega.measure() != Rational(1))
        throw PreconditionFailed("omega must have measure 1");
    if (!check_set_tiling(omega, lambda).holds())
        throw PreconditionFailed("omega + lambda is not a tiling");
    if (!check_opr(omega, d, tol).holds())
        throw PreconditionFailed("D is not an orthogonal packing region");

    Verdict v = d.measure() <= Rational(1)
                    ? Verdict::make_holds()
                    : Verdict::make_fails(MeasureWitness{"D", d.measure(), 1});
    v.margins.push_back({"measure_D", d.measure().to_double(), false});
    return v;
}

Verdict duality_roundtrip(Domain const& omega,
                          Domain const& d,
                          PeriodicSet const& lambda,
                          double tol)
{
    if (!check_tight_pair(omega, d, tol).holds())
        throw PreconditionFailed("(omega, D) is not a tight pair");
    auto const spec = check_spectrum_periodic(omega, lambda, tol).first;
    auto const tile = check_set_tiling(d, lambda);

    if (spec.status == Status::inconclusive)
    {
        Verdict out = spec;
        out.notes.push_back("spectrum check undecided");
        return out;
    }
    if (spec.status != tile.status)
        return Verdict::make_fails(DisagreementWitness{
            "spectrum(omega)", spec.status, "tiling(D)", tile.status});
    auto out = Verdict::make_holds();
    out.notes.push_back(spec.holds() ? "both hold" : "both fail");
    return out;
}

}  // namespace spectral
