#include "spectral/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "spectral/errors.hpp"

namespace spectral
{
//---------------------------------------------------------------------------//
// Box
//---------------------------------------------------------------------------//

Rational Box::measure() const
{
    Rational m = 1;
    for (std::size_t j = 0; j < dim(); ++j)
        m *= hi[j] - lo[j];
    return m;
}

bool Box::contains(RVec const& p) const
{
    for (std::size_t j = 0; j < dim(); ++j)
        if (!(lo[j] < p[j] && p[j] < hi[j]))
            return false;
    return true;
}

bool Box::contains(std::span<double const> p) const
{
    for (std::size_t j = 0; j < dim(); ++j)
        if (!(lo[j].to_double() < p[j] && p[j] < hi[j].to_double()))
            return false;
    return true;
}

Box Box::translated(RVec const& t) const
{
    return Box{lo + t, hi + t};
}

RVec Box::center() const
{
    RVec c(dim());
    for (std::size_t j = 0; j < dim(); ++j)
        c[j] = (lo[j] + hi[j]) / Rational(2);
    return c;
}

Box make_box(RVec lo, RVec hi)
{
    if (lo.size() != hi.size())
        throw DimensionMismatch("box corners differ in dimension");
    if (lo.empty())
        throw std::invalid_argument("box must have dimension >= 1");
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (!(lo[j] < hi[j]))
            throw std::invalid_argument("degenerate box: lo >= hi on axis "
                                        + std::to_string(j));
    return Box{std::move(lo), std::move(hi)};
}

std::optional<Box> intersect(Box const& a, Box const& b)
{
    Box r{a.lo, a.hi};
    for (std::size_t j = 0; j < a.dim(); ++j)
    {
        r.lo[j] = std::max(a.lo[j], b.lo[j]);
        r.hi[j] = std::min(a.hi[j], b.hi[j]);
        if (!(r.lo[j] < r.hi[j]))
            return std::nullopt;
    }
    return r;
}

//---------------------------------------------------------------------------//
// Domain
//---------------------------------------------------------------------------//

Domain validate_domain(std::vector<Box> boxes)
{
    if (boxes.empty())
        throw std::invalid_argument("domain needs at least one box");
    std::size_t d = boxes.front().dim();
    for (auto const& b : boxes)
    {
        if (b.dim() != d || b.hi.size() != d)
            throw DimensionMismatch("domain boxes differ in dimension");
        make_box(b.lo, b.hi);
    }
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t k = i + 1; k < boxes.size(); ++k)
            if (auto common = intersect(boxes[i], boxes[k]))
                throw OverlapError(i, k, common->center());
    return Domain::from_boxes(std::move(boxes));
}

Domain Domain::from_boxes(std::vector<Box> boxes)
{
    if (boxes.empty())
        throw std::invalid_argument("domain needs at least one box");
    std::size_t d = boxes.front().dim();
    for (auto const& b : boxes)
    {
        if (b.dim() != d || b.hi.size() != d)
            throw DimensionMismatch("domain boxes differ in dimension");
        make_box(b.lo, b.hi);
    }
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t k = i + 1; k < boxes.size(); ++k)
            if (auto common = intersect(boxes[i], boxes[k]))
                throw OverlapError(i, k, common->center());

    Domain u;
    u.dim_ = d;
    u.boxes_ = std::move(boxes);
    for (auto const& b : u.boxes_)
        u.measure_ += b.measure();
    return u;
}

Domain Domain::intervals(std::vector<std::pair<Rational, Rational>> iv)
{
    std::vector<Box> boxes;
    boxes.reserve(iv.size());
    for (auto const& [a, b] : iv)
        boxes.push_back(make_box({a}, {b}));
    return from_boxes(std::move(boxes));
}

Domain Domain::product(std::vector<Domain> factors)
{
    if (factors.empty())
        throw std::invalid_argument("product needs at least one factor");
    for (auto const& f : factors)
        if (f.dim() != 1)
            throw DimensionMismatch("product factors must be one-dimensional");

    std::vector<Box> boxes{Box{}};
    for (auto const& f : factors)
    {
        std::vector<Box> next;
        for (auto const& partial : boxes)
            for (auto const& b : f.boxes())
            {
                Box e = partial;
                e.lo.push_back(b.lo[0]);
                e.hi.push_back(b.hi[0]);
                next.push_back(std::move(e));
            }
        boxes = std::move(next);
    }
    Domain u = from_boxes(std::move(boxes));
    u.factors_ = std::move(factors);
    return u;
}

Domain Domain::cube(std::size_t dim)
{
    Rational half(1, 2);
    std::vector<Domain> f(dim, intervals({{-half, half}}));
    return product(std::move(f));
}

std::optional<std::vector<Domain>> Domain::factors() const
{
    if (factors_)
        return factors_;
    if (dim_ == 1)
        return std::vector<Domain>{*this};
    if (boxes_.size() == 1)
    {
        std::vector<Domain> f;
        for (std::size_t j = 0; j < dim_; ++j)
            f.push_back(intervals({{boxes_[0].lo[j], boxes_[0].hi[j]}}));
        return f;
    }
    return std::nullopt;
}

Domain Domain::translated(RVec const& t) const
{
    if (t.size() != dim_)
        throw DimensionMismatch("translation dimension");
    if (factors_)
    {
        std::vector<Domain> f;
        for (std::size_t j = 0; j < dim_; ++j)
            f.push_back((*factors_)[j].translated({t[j]}));
        return product(std::move(f));
    }
    std::vector<Box> boxes;
    for (auto const& b : boxes_)
        boxes.push_back(b.translated(t));
    return from_boxes(std::move(boxes));
}

Box Domain::bounding_box() const
{
    Box bb = boxes_.front();
    for (auto const& b : boxes_)
        for (std::size_t j = 0; j < dim_; ++j)
        {
            bb.lo[j] = std::min(bb.lo[j], b.lo[j]);
            bb.hi[j] = std::max(bb.hi[j], b.hi[j]);
        }
    return bb;
}

double Domain::diameter() const
{
    Box bb = bounding_box();
    double s = 0;
    for (std::size_t j = 0; j < dim_; ++j)
    {
        double w = (bb.hi[j] - bb.lo[j]).to_double();
        s += w * w;
    }
    return std::sqrt(s);
}

std::int64_t Domain::common_denominator() const
{
    std::int64_t q = 1;
    for (auto const& b : boxes_)
        for (std::size_t j = 0; j < dim_; ++j)
            q = lcm_checked(lcm_checked(q, b.lo[j].den()), b.hi[j].den());
    return q;
}

bool Domain::contains(RVec const& p) const
{
    return std::any_of(boxes_.begin(), boxes_.end(), [&](Box const& b) {
        return b.contains(p);
    });
}

bool Domain::contains(std::span<double const> p) const
{
    return std::any_of(boxes_.begin(), boxes_.end(), [&](Box const& b) {
        return b.contains(p);
    });
}

//---------------------------------------------------------------------------//
// DifferenceBody
//---------------------------------------------------------------------------//

bool DifferenceBody::contains(RVec const& p) const
{
    if (p.size() != dim)
        throw DimensionMismatch("point dimension");
    return std::any_of(boxes.begin(), boxes.end(), [&](Box const& b) {
        return b.contains(p);
    });
}

Box DifferenceBody::bounding_box() const
{
    Box bb = boxes.front();
    for (auto const& b : boxes)
        for (std::size_t j = 0; j < dim; ++j)
        {
            bb.lo[j] = std::min(bb.lo[j], b.lo[j]);
            bb.hi[j] = std::max(bb.hi[j], b.hi[j]);
        }
    return bb;
}

DifferenceBody minkowski_difference(Domain const& u, Domain const& v)
{
    if (u.dim() != v.dim())
        throw DimensionMismatch("minkowski_difference of unequal dimensions");
    DifferenceBody body;
    body.dim = u.dim();
    for (auto const& a : u.boxes())
        for (auto const& b : v.boxes())
            body.boxes.push_back(Box{a.lo - b.hi, a.hi - b.lo});
    return body;
}

//---------------------------------------------------------------------------//
// Multiplicity
//---------------------------------------------------------------------------//

namespace
{
// Index of the elementary interval [breaks[i], breaks[i+1]) holding x
std::size_t locate(std::vector<Rational> const& breaks, Rational const& x)
{
    auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    return static_cast<std::size_t>(it - breaks.begin()) - 1;
}

std::size_t locate(std::vector<Rational> const& breaks, double x)
{
    auto it = std::upper_bound(
        breaks.begin(), breaks.end(), x, [](double v, Rational const& r) {
            return v < r.to_double();
        });
    auto i = static_cast<std::size_t>(it - breaks.begin());
    return i == 0 ? 0 : std::min(i - 1, breaks.size() - 2);
}
}  // namespace

int Multiplicity::level_at(std::span<double const> x) const
{
    std::size_t flat = 0;
    for (std::size_t j = 0; j < period.size(); ++j)
    {
        double c = period[j].to_double();
        double r = x[j] - c * std::floor(x[j] / c);
        flat = flat * (breaks[j].size() - 1) + locate(breaks[j], r);
    }
    return levels[flat];
}

Rational Multiplicity::integrated_level() const
{
    Rational s;
    for (auto const& c : cells)
        s += Rational(c.level) * c.cell.measure();
    return s;
}

Multiplicity multiplicity(Domain const& u,
                          RVec const& period,
                          std::vector<RVec> const& reps,
                          int target,
                          std::size_t max_translates)
{
    std::size_t const d = u.dim();
    if (period.size() != d)
        throw DimensionMismatch("period dimension");
    for (auto const& c : period)
        if (c.sign() <= 0)
            throw std::invalid_argument("period entries must be positive");
    for (auto const& a : reps)
        if (a.size() != d)
            throw DimensionMismatch("representative dimension");

    Box cell{RVec(d), period};

    // Gather every translate b + a + period*n that meets the open cell,
    // clipped to it.
    std::vector<Box> pieces;
    for (auto const& a : reps)
    {
        for (auto const& b : u.boxes())
        {
            std::vector<std::int64_t> first(d), last(d);
            std::size_t count = 1;
            for (std::size_t j = 0; j < d; ++j)
            {
                // lo + a + c n < c  and  hi + a + c n > 0
                Rational lo_n = -(b.hi[j] + a[j]) / period[j];
                Rational hi_n = (period[j] - b.lo[j] - a[j]) / period[j];
                first[j] = lo_n.floor() + 1;
                last[j] = hi_n.ceil() - 1;
                if (last[j] < first[j])
                {
                    count = 0;
                    break;
                }
                count *= static_cast<std::size_t>(last[j] - first[j] + 1);
                if (count > max_translates)
                    throw UnboundedTranslateCount(
                        "too many translates meet the fundamental cell");
            }
            if (count == 0)
                continue;
            if (pieces.size() + count > max_translates)
                throw UnboundedTranslateCount(
                    "too many translates meet the fundamental cell");

            std::vector<std::int64_t> n = first;
            while (true)
            {
                RVec shift(d);
                for (std::size_t j = 0; j < d; ++j)
                    shift[j] = a[j] + period[j] * Rational(n[j]);
                if (auto clipped = intersect(b.translated(shift), cell))
                    pieces.push_back(std::move(*clipped));
                std::size_t j = 0;
                for (; j < d; ++j)
                {
                    if (++n[j] <= last[j])
                        break;
                    n[j] = first[j];
                }
                if (j == d)
                    break;
            }
        }
    }

    Multiplicity m;
    m.period = period;
    m.target = target;
    m.breaks.resize(d);
    for (std::size_t j = 0; j < d; ++j)
    {
        auto& br = m.breaks[j];
        br.push_back(Rational(0));
        br.push_back(period[j]);
        for (auto const& p : pieces)
        {
            br.push_back(p.lo[j]);
            br.push_back(p.hi[j]);
        }
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());
    }

    std::vector<std::size_t> extent(d);
    std::size_t total = 1;
    for (std::size_t j = 0; j < d; ++j)
    {
        extent[j] = m.breaks[j].size() - 1;
        total *= extent[j];
    }
    if (total > (std::size_t(1) << 26))
        throw UnboundedTranslateCount("multiplicity grid too fine");
    m.levels.assign(total, 0);

    // Add one to every elementary cell covered by each piece
    for (auto const& p : pieces)
    {
        std::vector<std::size_t> first(d), last(d);
        for (std::size_t j = 0; j < d; ++j)
        {
            first[j] = locate(m.breaks[j], p.lo[j]);
            last[j] = locate(m.breaks[j], p.hi[j]) - 1;
        }
        std::vector<std::size_t> idx = first;
        while (true)
        {
            std::size_t flat = 0;
            for (std::size_t j = 0; j < d; ++j)
                flat = flat * extent[j] + idx[j];
            ++m.levels[flat];
            std::size_t j = d;
            while (j-- > 0)
            {
                if (++idx[j] <= last[j])
                    break;
                idx[j] = first[j];
            }
            if (j == static_cast<std::size_t>(-1))
                break;
        }
    }

    m.level_min = *std::min_element(m.levels.begin(), m.levels.end());
    m.level_max = *std::max_element(m.levels.begin(), m.levels.end());
    m.cells.reserve(total);
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t flat = 0; flat < total; ++flat)
    {
        std::size_t rem = flat;
        for (std::size_t j = d; j-- > 0;)
        {
            idx[j] = rem % extent[j];
            rem /= extent[j];
        }
        Box c{RVec(d), RVec(d)};
        for (std::size_t j = 0; j < d; ++j)
        {
            c.lo[j] = m.breaks[j][idx[j]];
            c.hi[j] = m.breaks[j][idx[j] + 1];
        }
        LevelCell lc{std::move(c), m.levels[flat]};
        if (lc.level != target)
            m.defect_cells.push_back(lc);
        m.cells.push_back(std::move(lc));
    }
    return m;
}

}  // namespace spectral
