#include "spectral/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "spectral/errors.hpp"
#include "spectral/polynomial.hpp"

namespace spectral
{
//---------------------------------------------------------------------------//
// Lattice
//---------------------------------------------------------------------------//

Lattice::Lattice(RMatrix basis) : basis_(std::move(basis))
{
    if (basis_.size() == 0)
        throw std::invalid_argument("lattice needs dimension >= 1");
    det_ = basis_.determinant();
    if (det_.is_zero())
        throw std::invalid_argument("lattice basis is singular");
    inverse_ = basis_.inverse();
}

Lattice Lattice::integer(std::size_t dim)
{
    return Lattice(RMatrix::identity(dim));
}

Lattice Lattice::diagonal(RVec const& periods)
{
    return Lattice(RMatrix::diagonal(periods));
}

RVec Lattice::periods() const
{
    if (!is_diagonal())
        throw std::logic_error("periods() needs a diagonal basis");
    RVec p(dim());
    for (std::size_t j = 0; j < dim(); ++j)
        p[j] = basis_(j, j).abs();
    return p;
}

bool Lattice::contains(RVec const& v) const
{
    auto coords = inverse_ * v;
    return std::all_of(coords.begin(), coords.end(), [](Rational const& c) {
        return c.is_integer();
    });
}

RVec Lattice::reduce(RVec const& v) const
{
    auto coords = inverse_ * v;
    RVec n(dim());
    for (std::size_t j = 0; j < dim(); ++j)
        n[j] = Rational(coords[j].floor());
    return v - basis_ * n;
}

Lattice dual(Lattice const& l)
{
    return Lattice(l.inverse_basis().transpose());
}

std::vector<RVec> lattice_points_in(Lattice const& l,
                                    RVec const& offset,
                                    Box const& box,
                                    std::size_t max_points)
{
    std::size_t const d = l.dim();
    // Bounding box of the coordinate preimage over the 2^d corners
    std::vector<std::int64_t> first(d), last(d);
    bool init = false;
    for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask)
    {
        RVec corner(d);
        for (std::size_t j = 0; j < d; ++j)
            corner[j] = ((mask >> j) & 1u) ? box.hi[j] : box.lo[j];
        auto c = l.inverse_basis() * (corner - offset);
        for (std::size_t j = 0; j < d; ++j)
        {
            auto lo = c[j].floor();
            auto hi = c[j].ceil();
            if (!init)
            {
                first[j] = lo;
                last[j] = hi;
            }
            else
            {
                first[j] = std::min(first[j], lo);
                last[j] = std::max(last[j], hi);
            }
        }
        init = true;
    }
    std::size_t count = 1;
    for (std::size_t j = 0; j < d; ++j)
    {
        count *= static_cast<std::size_t>(last[j] - first[j] + 1);
        if (count > max_points)
            throw UnboundedTranslateCount("lattice enumeration too large");
    }

    std::vector<RVec> out;
    std::vector<std::int64_t> n = first;
    RVec coords(d);
    while (true)
    {
        for (std::size_t j = 0; j < d; ++j)
            coords[j] = Rational(n[j]);
        RVec p = offset + l.basis() * coords;
        if (box.contains(p))
            out.push_back(std::move(p));
        std::size_t j = d;
        while (j-- > 0)
        {
            if (++n[j] <= last[j])
                break;
            n[j] = first[j];
        }
        if (j == static_cast<std::size_t>(-1))
            break;
    }
    return out;
}

//---------------------------------------------------------------------------//
// PeriodicSet
//---------------------------------------------------------------------------//

PeriodicSet::PeriodicSet(Lattice lattice, std::vector<RVec> reps)
    : lattice_(std::move(lattice)), translation_(lattice_.dim())
{
    if (reps.empty())
        throw std::invalid_argument("periodic set needs a representative");
    for (auto& a : reps)
    {
        if (a.size() != dim())
            throw DimensionMismatch("representative dimension");
        a = lattice_.reduce(a);
    }
    auto sorted = reps;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument(
            "representatives are not distinct modulo the lattice");
    reps_ = std::move(sorted);
}

bool PeriodicSet::contains(RVec const& p) const
{
    return std::any_of(reps_.begin(), reps_.end(), [&](RVec const& a) {
        return lattice_.contains(p - a);
    });
}

PeriodicSet PeriodicSet::translated(RVec const& t) const
{
    std::vector<RVec> moved;
    moved.reserve(reps_.size());
    for (auto const& a : reps_)
        moved.push_back(a + t);
    return PeriodicSet(lattice_, std::move(moved));
}

PeriodicSet PeriodicSet::with_origin() const
{
    if (contains_zero())
        return *this;
    RVec shift = reps_.front();
    PeriodicSet moved = translated(-shift);
    moved.translation_ = translation_ - shift;
    return moved;
}

Rational density(PeriodicSet const& s)
{
    return Rational(static_cast<std::int64_t>(s.size()))
           / s.lattice().covolume();
}

PeriodicSet normalize_rectangular(PeriodicSet const& s)
{
    if (s.lattice().is_diagonal())
    {
        // Same lattice with positive diagonal; representatives re-reduced
        PeriodicSet out(Lattice::diagonal(s.lattice().periods()), s.reps());
        return out;
    }

    std::size_t const d = s.dim();
    auto const& inv = s.lattice().inverse_basis();
    RVec t(d);
    for (std::size_t j = 0; j < d; ++j)
    {
        // smallest t > 0 with t * M^{-1} e_j integral
        std::int64_t den = 1;
        for (std::size_t i = 0; i < d; ++i)
            den = lcm_checked(den, inv(i, j).den());
        std::int64_t g = 0;
        for (std::size_t i = 0; i < d; ++i)
            g = std::gcd(g, (inv(i, j) * Rational(den)).num());
        t[j] = Rational(den, g);
    }

    Lattice rect = Lattice::diagonal(t);
    // Points of L in the half-open cell [0, t): enumerate over a slightly
    // larger open box, keep the half-open ones.
    Box probe{RVec(d), t};
    for (std::size_t j = 0; j < d; ++j)
        probe.lo[j] = -t[j] / Rational(2);
    std::vector<RVec> cell_points;
    for (auto& p : lattice_points_in(s.lattice(), RVec(d), probe))
    {
        bool inside = true;
        for (std::size_t j = 0; j < d; ++j)
            inside = inside && p[j].sign() >= 0 && p[j] < t[j];
        if (inside)
            cell_points.push_back(std::move(p));
    }

    std::vector<RVec> reps;
    for (auto const& a : s.reps())
        for (auto const& p : cell_points)
            reps.push_back(rect.reduce(a + p));
    std::sort(reps.begin(), reps.end());
    return PeriodicSet(std::move(rect), std::move(reps));
}

Multiplicity multiplicity(Domain const& u, PeriodicSet const& s, int target)
{
    if (u.dim() != s.dim())
        throw DimensionMismatch("domain and point set dimensions differ");
    auto rect = normalize_rectangular(s);
    return multiplicity(u, rect.lattice().periods(), rect.reps(), target);
}

//---------------------------------------------------------------------------//
// Dual weights
//---------------------------------------------------------------------------//

DualWeight weight(PeriodicSet const& s, RVec const& xi)
{
    if (xi.size() != s.dim())
        throw DimensionMismatch("dual point dimension");
    auto coords = s.lattice().basis().transpose() * xi;
    for (auto const& c : coords)
        if (!c.is_integer())
            throw NotDualPoint("not a point of the dual lattice: " + str(xi));

    std::vector<Rational> phases;
    phases.reserve(s.size());
    std::int64_t q = 1;
    for (auto const& a : s.reps())
    {
        phases.push_back(mod(dot(xi, a), Rational(1)));
        q = lcm_checked(q, phases.back().den());
    }

    DualWeight w;
    w.xi = xi;
    w.order = q;
    std::vector<std::int64_t> exps;
    exps.reserve(phases.size());
    for (auto const& ph : phases)
    {
        std::int64_t e = (ph * Rational(q)).num();
        exps.push_back(e);
        double angle = -2.0 * std::numbers::pi * static_cast<double>(e)
                       / static_cast<double>(q);
        w.weight += std::polar(1.0, angle);
    }
    if (q <= max_exact_order)
        w.exact_zero = root_of_unity_sum_vanishes(exps, q);
    return w;
}

std::vector<RVec> enumerate_dual_in(PeriodicSet const& s,
                                    DifferenceBody const& body)
{
    if (body.dim != s.dim())
        throw DimensionMismatch("body and point set dimensions differ");
    if (body.boxes.empty())
        return {};
    Lattice dl = dual(s.lattice());
    auto candidates
        = lattice_points_in(dl, RVec(s.dim()), body.bounding_box());
    std::vector<RVec> out;
    for (auto& p : candidates)
    {
        bool zero = std::all_of(p.begin(), p.end(), [](Rational const& r) {
            return r.is_zero();
        });
        if (!zero && body.contains(p))
            out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

//---------------------------------------------------------------------------//
// Windows
//---------------------------------------------------------------------------//

WindowSet window(PeriodicSet const& s, Box const& w)
{
    if (w.dim() != s.dim())
        throw DimensionMismatch("window dimension");
    std::vector<RVec> pts;
    for (auto const& a : s.reps())
    {
        auto found = lattice_points_in(s.lattice(), a, w);
        pts.insert(pts.end(),
                   std::make_move_iterator(found.begin()),
                   std::make_move_iterator(found.end()));
    }
    std::sort(pts.begin(), pts.end());
    WindowSet out;
    out.dim = s.dim();
    out.window = w;
    for (auto const& p : pts)
        out.points.push_back(to_doubles(p));
    out.exact = std::move(pts);
    return out;
}

namespace
{
template<class T>
double as_double(T const& v)
{
    if constexpr (std::is_same_v<T, Rational>)
        return v.to_double();
    else
        return v;
}

template<class T>
void check_shifted_columns(std::vector<T> const& shifts, Box const& w)
{
    if (shifts.empty())
        throw std::invalid_argument("shifted columns need at least one shift");
    if (w.dim() != 2)
        throw DimensionMismatch("shifted columns live in the plane");
}
}  // namespace

WindowSet shifted_column_cubes(std::vector<Rational> const& shifts,
                               Box const& w)
{
    check_shifted_columns(shifts, w);
    auto const len = static_cast<std::int64_t>(shifts.size());
    std::vector<RVec> pts;
    for (auto n = w.lo[0].floor(); n <= w.hi[0].ceil(); ++n)
    {
        Rational x(n);
        if (!(w.lo[0] < x && x < w.hi[0]))
            continue;
        Rational s = shifts[static_cast<std::size_t>(((n % len) + len) % len)];
        for (auto m = (w.lo[1] - s).floor(); m <= (w.hi[1] - s).ceil(); ++m)
        {
            Rational y = Rational(m) + s;
            if (w.lo[1] < y && y < w.hi[1])
                pts.push_back({x, y});
        }
    }
    WindowSet out;
    out.dim = 2;
    out.window = w;
    for (auto const& p : pts)
        out.points.push_back(to_doubles(p));
    out.exact = std::move(pts);
    return out;
}

WindowSet shifted_column_cubes(std::vector<double> const& shifts,
                               Box const& w)
{
    check_shifted_columns(shifts, w);
    auto const len = static_cast<std::int64_t>(shifts.size());
    double const x0 = w.lo[0].to_double(), x1 = w.hi[0].to_double();
    double const y0 = w.lo[1].to_double(), y1 = w.hi[1].to_double();
    WindowSet out;
    out.dim = 2;
    out.window = w;
    for (auto n = static_cast<std::int64_t>(std::floor(x0));
         n <= static_cast<std::int64_t>(std::ceil(x1));
         ++n)
    {
        double x = static_cast<double>(n);
        if (!(x0 < x && x < x1))
            continue;
        double s = shifts[static_cast<std::size_t>(((n % len) + len) % len)];
        for (auto m = static_cast<std::int64_t>(std::floor(y0 - s));
             m <= static_cast<std::int64_t>(std::ceil(y1 - s));
             ++m)
        {
            double y = static_cast<double>(m) + s;
            if (y0 < y && y < y1)
                out.points.push_back({x, y});
        }
    }
    return out;
}

PeriodicSet shifted_columns_periodic(std::vector<Rational> const& shifts)
{
    if (shifts.empty())
        throw std::invalid_argument("shifted columns need at least one shift");
    auto const len = static_cast<std::int64_t>(shifts.size());
    std::vector<RVec> reps;
    for (std::int64_t j = 0; j < len; ++j)
        reps.push_back({Rational(j), shifts[static_cast<std::size_t>(j)]});
    return PeriodicSet(Lattice::diagonal({Rational(len), Rational(1)}),
                       std::move(reps));
}

DensityEstimate density_estimate(WindowSet const& s, double radius)
{
    std::size_t const d = s.window.dim();
    double min_side = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d; ++j)
        min_side = std::min(
            min_side, (s.window.hi[j] - s.window.lo[j]).to_double());
    if (!(radius > 0) || !(radius < min_side / 2))
        throw RadiusTooLarge("radius must be below half the window side");
    if (s.points.empty())
        return {};

    constexpr int per_axis = 17;
    std::size_t n_centers = 1;
    for (std::size_t j = 0; j < d; ++j)
        n_centers *= per_axis;

    double const volume = std::pow(2 * radius, static_cast<double>(d));
    double sum = 0, best = 0;
    for (std::size_t c = 0; c < n_centers; ++c)
    {
        std::vector<double> center(d);
        std::size_t rem = c;
        for (std::size_t j = 0; j < d; ++j)
        {
            double lo = s.window.lo[j].to_double() + radius;
            double hi = s.window.hi[j].to_double() - radius;
            auto k = static_cast<double>(rem % per_axis);
            rem /= per_axis;
            center[j] = lo + (hi - lo) * k / (per_axis - 1);
        }
        std::size_t count = 0;
        for (auto const& p : s.points)
        {
            bool in = true;
            for (std::size_t j = 0; j < d && in; ++j)
                in = p[j] >= center[j] - radius && p[j] < center[j] + radius;
            count += in;
        }
        double est = static_cast<double>(count) / volume;
        sum += est;
        best = std::max(best, est);
    }
    return {sum / static_cast<double>(n_centers), best};
}

namespace
{
template<class T>
std::size_t max_in_unit_cube(std::vector<std::vector<T>> pts, T const& one)
{
    std::size_t const d = pts.front().size();
    std::sort(pts.begin(), pts.end());
    auto sweep = [&](std::vector<T>& v) {
        std::sort(v.begin(), v.end());
        std::size_t best = 0, lo = 0;
        for (std::size_t hi = 0; hi < v.size(); ++hi)
        {
            while (!(v[hi] < v[lo] + one))
                ++lo;
            best = std::max(best, hi - lo + 1);
        }
        return best;
    };
    std::vector<T> ys;
    if (d == 1)
    {
        for (auto const& p : pts)
            ys.push_back(p[0]);
        return sweep(ys);
    }
    std::size_t best = 0;
    std::size_t end = 0;
    for (std::size_t start = 0; start < pts.size(); ++start)
    {
        if (start > 0 && pts[start][0] == pts[start - 1][0])
            continue;
        end = std::max(end, start);
        while (end < pts.size() && pts[end][0] < pts[start][0] + one)
            ++end;
        ys.clear();
        for (std::size_t i = start; i < end; ++i)
            ys.push_back(pts[i][1]);
        best = std::max(best, sweep(ys));
    }
    return best;
}
}  // namespace

double unit_cube_count(WindowSet const& s)
{
    if (s.points.empty())
        return 0;
    std::size_t const d = s.dim;
    if (d <= 2)
    {
        if (s.exact)
            return static_cast<double>(max_in_unit_cube(*s.exact, Rational(1)));
        return static_cast<double>(max_in_unit_cube(s.points, 1.0));
    }
    // Any unit cube meets at most 2^d cells of the integer grid
    std::map<std::vector<long long>, std::size_t> cells;
    std::size_t best = 0;
    for (auto const& p : s.points)
    {
        std::vector<long long> key(d);
        for (std::size_t j = 0; j < d; ++j)
            key[j] = static_cast<long long>(std::floor(p[j]));
        best = std::max(best, ++cells[key]);
    }
    return static_cast<double>(best) * std::pow(2.0, static_cast<double>(d));
}

}  // namespace spectral
