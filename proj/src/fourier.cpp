#include "spectral/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "spectral/errors.hpp"
#include "spectral/polynomial.hpp"

namespace spectral
{
namespace
{
constexpr double pi = std::numbers::pi;

// sin(x)/x with a series below the cancellation threshold
double sinc(double x)
{
    if (std::abs(x) < 1e-6 * pi)
        return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

Complex box_ft(Box const& b, std::span<double const> xi)
{
    Complex v = 1.0;
    for (std::size_t j = 0; j < b.dim(); ++j)
        v *= ft_interval(b.lo[j].to_double(), b.hi[j].to_double(), xi[j]);
    return v;
}
}  // namespace

Complex ft_interval(double lo, double hi, double xi)
{
    double const w = hi - lo;
    double const phase = -pi * (lo + hi) * xi;
    double const mag = w * sinc(pi * w * xi);
    return {mag * std::cos(phase), mag * std::sin(phase)};
}

Complex ft_indicator(Domain const& u, std::span<double const> xi)
{
    if (xi.size() != u.dim())
        throw DimensionMismatch("frequency dimension");
    Complex s = 0;
    for (auto const& b : u.boxes())
        s += box_ft(b, xi);
    return s;
}

Complex ft_indicator(Domain const& u, RVec const& xi)
{
    auto x = to_doubles(xi);
    return ft_indicator(u, std::span<double const>(x));
}

double power_spectrum(Domain const& u, std::span<double const> xi)
{
    return std::norm(ft_indicator(u, xi));
}

//---------------------------------------------------------------------------//
// AxisRoots
//---------------------------------------------------------------------------//

bool AxisRoots::contains(Rational const& xi) const
{
    if (xi.is_zero())
        return false;
    Rational r = mod(xi, period);
    return std::binary_search(
        rational_phases.begin(), rational_phases.end(), r);
}

std::vector<double> AxisRoots::list(double range) const
{
    std::vector<double> out;
    double const p = period.to_double();
    auto add_family = [&](double phase) {
        auto k0 = static_cast<long long>(std::floor((-range - phase) / p));
        auto k1 = static_cast<long long>(std::ceil((range - phase) / p));
        for (long long k = k0; k <= k1; ++k)
        {
            double v = phase + p * static_cast<double>(k);
            if (v >= -range && v <= range)
                out.push_back(v);
        }
    };
    for (auto const& r : rational_phases)
    {
        // Work from the exact family so that the excluded 0 is exact
        auto k0 = static_cast<std::int64_t>(
            std::floor((-range - r.to_double()) / p));
        auto k1 = static_cast<std::int64_t>(
            std::ceil((range - r.to_double()) / p));
        for (auto k = k0; k <= k1; ++k)
        {
            Rational v = r + period * Rational(k);
            double dv = v.to_double();
            if (v.is_zero() || dv < -range || dv > range)
                continue;
            out.push_back(dv);
        }
    }
    for (auto const& ph : irrational_phases)
        add_family(ph.approx);
    std::sort(out.begin(), out.end());
    return out;
}

//---------------------------------------------------------------------------//
// roots_1d
//---------------------------------------------------------------------------//

namespace
{
// Largest shift p/k leaving the phase sets invariant
void reduce_period(AxisRoots& roots)
{
    auto const n_rat = roots.rational_phases.size();
    auto const n_irr = roots.irrational_phases.size();
    if (n_rat == 0)
        return;
    for (std::size_t k = n_rat; k >= 2; --k)
    {
        if (n_rat % k != 0 || n_irr % k != 0)
            continue;
        Rational shift = roots.period / Rational(static_cast<std::int64_t>(k));
        bool ok = std::all_of(
            roots.rational_phases.begin(),
            roots.rational_phases.end(),
            [&](Rational const& r) {
                return std::binary_search(roots.rational_phases.begin(),
                                          roots.rational_phases.end(),
                                          mod(r + shift, roots.period));
            });
        double const p = roots.period.to_double();
        double const s = shift.to_double();
        for (auto const& ph : roots.irrational_phases)
        {
            if (!ok)
                break;
            double target = std::fmod(ph.approx + s, p);
            ok = std::any_of(roots.irrational_phases.begin(),
                             roots.irrational_phases.end(),
                             [&](IrrationalPhase const& o) {
                                 double diff = std::abs(o.approx - target);
                                 diff = std::min(diff, p - diff);
                                 return diff <= ph.error_bound + o.error_bound;
                             });
        }
        if (!ok)
            continue;

        std::vector<Rational> rat;
        for (auto const& r : roots.rational_phases)
            if (r < shift)
                rat.push_back(r);
        std::vector<IrrationalPhase> irr;
        for (auto const& ph : roots.irrational_phases)
            if (ph.approx < s - ph.error_bound)
                irr.push_back(ph);
        roots.period = shift;
        roots.rational_phases = std::move(rat);
        roots.irrational_phases = std::move(irr);
        return;
    }
}
}  // namespace

AxisRoots roots_1d(Domain const& interval_union)
{
    if (interval_union.dim() != 1)
        throw DimensionMismatch("roots_1d needs a one-dimensional domain");

    std::int64_t const q = interval_union.common_denominator();
    std::vector<std::int64_t> plus, minus;
    for (auto const& b : interval_union.boxes())
    {
        plus.push_back((b.lo[0] * Rational(q)).num());
        minus.push_back((b.hi[0] * Rational(q)).num());
    }
    std::int64_t lowest = std::min(*std::min_element(plus.begin(), plus.end()),
                                   *std::min_element(minus.begin(), minus.end()));
    std::int64_t highest
        = std::max(*std::max_element(plus.begin(), plus.end()),
                   *std::max_element(minus.begin(), minus.end()));
    if (highest - lowest > 20000)
        throw NonRationalEndpoints(
            "endpoint polynomial degree too large for exact root analysis");

    std::vector<std::int64_t> coeffs(
        static_cast<std::size_t>(highest - lowest) + 1, 0);
    for (auto e : plus)
        ++coeffs[static_cast<std::size_t>(e - lowest)];
    for (auto e : minus)
        --coeffs[static_cast<std::size_t>(e - lowest)];
    IntPoly poly(std::move(coeffs));
    poly.strip_x_powers();

    AxisRoots roots;
    roots.period = Rational(q);

    // Roots of unity: Phi_m can divide only when phi(m) <= deg, and
    // phi(m) >= sqrt(m/2) bounds the search.
    int const deg = poly.degree();
    std::int64_t const m_max = 2 * static_cast<std::int64_t>(deg) * deg + 2;
    std::vector<std::int64_t> phi(static_cast<std::size_t>(m_max) + 1);
    std::iota(phi.begin(), phi.end(), 0);
    for (std::int64_t p = 2; p <= m_max; ++p)
        if (phi[p] == p)
            for (std::int64_t k = p; k <= m_max; k += p)
                phi[k] -= phi[k] / p;

    for (std::int64_t m = 1; m <= m_max && poly.degree() >= 1; ++m)
    {
        if (phi[m] > poly.degree())
            continue;
        IntPoly cyc = cyclotomic(m);
        if (!poly.divide_exact(cyc))
            continue;
        while (poly.degree() >= cyc.degree() && poly.divide_exact(cyc)) {}
        // z = exp(2 pi i j/m) <=> xi = q j'/m mod q, j' coprime to m
        for (std::int64_t j = 0; j < m; ++j)
            if (std::gcd(j, m) == 1)
                roots.rational_phases.push_back(Rational(q) * Rational(j, m));
    }

    if (poly.degree() >= 1)
    {
        double const qd = static_cast<double>(q);
        for (auto z : polynomial_roots(poly))
        {
            if (std::abs(std::abs(z) - 1.0) >= 1e-8)
                continue;
            double xi = -qd * std::arg(z) / (2 * pi);
            xi = std::fmod(xi, qd);
            if (xi < 0)
                xi += qd;
            roots.irrational_phases.push_back({xi, 1e-8});
        }
        std::sort(roots.irrational_phases.begin(),
                  roots.irrational_phases.end(),
                  [](auto const& a, auto const& b) {
                      return a.approx < b.approx;
                  });
    }

    std::sort(roots.rational_phases.begin(), roots.rational_phases.end());
    roots.rational_phases.erase(std::unique(roots.rational_phases.begin(),
                                            roots.rational_phases.end()),
                                roots.rational_phases.end());
    reduce_period(roots);
    return roots;
}

//---------------------------------------------------------------------------//
// Zero sets
//---------------------------------------------------------------------------//

std::vector<AxisRoots> ZeroSet::axes() const
{
    if (auto const* p = std::get_if<ProductHyperplanes>(&form))
        return p->axes;
    if (auto const* r = std::get_if<Roots1D>(&form))
        return {r->axis};
    return {};
}

double default_zero_tol(Domain const& u)
{
    return 1e-9 * std::max(1.0, u.measure().to_double());
}

ZeroSet zero_set(Domain const& u)
{
    if (u.dim() == 1)
        return ZeroSet{u, Roots1D{roots_1d(u)}};
    if (auto f = u.factors())
    {
        ProductHyperplanes ph;
        for (auto const& factor : *f)
            ph.axes.push_back(roots_1d(factor));
        return ZeroSet{u, std::move(ph)};
    }
    return ZeroSet{u, NumericOnly{default_zero_tol(u)}};
}

char const* to_string(Membership m)
{
    switch (m)
    {
        case Membership::yes:
            return "yes";
        case Membership::no:
            return "no";
        case Membership::near:
            return "near";
    }
    return "?";
}

Membership in_zero_set(ZeroSet const& z, RVec const& xi, double tol)
{
    if (xi.size() != z.domain.dim())
        throw DimensionMismatch("frequency dimension");
    if (!z.structured())
    {
        auto x = to_doubles(xi);
        return in_zero_set(z, std::span<double const>(x), tol);
    }
    auto axes = z.axes();
    for (std::size_t j = 0; j < axes.size(); ++j)
        if (axes[j].contains(xi[j]))
            return Membership::yes;
    return Membership::no;
}

Membership
in_zero_set(ZeroSet const& z, std::span<double const> xi, double tol)
{
    if (xi.size() != z.domain.dim())
        throw DimensionMismatch("frequency dimension");
    auto classify = [tol](double v) {
        if (v <= tol)
            return Membership::yes;
        if (v <= 10 * tol)
            return Membership::near;
        return Membership::no;
    };
    if (z.structured())
    {
        auto factors = z.domain.factors();
        Membership best = Membership::no;
        for (std::size_t j = 0; j < xi.size(); ++j)
        {
            double const xj = xi[j];
            double v = std::abs(
                ft_indicator((*factors)[j], std::span<double const>(&xj, 1)));
            auto m = classify(v);
            if (m == Membership::yes)
                return m;
            if (m == Membership::near)
                best = m;
        }
        return best;
    }
    return classify(std::abs(ft_indicator(z.domain, xi)));
}

//---------------------------------------------------------------------------//
// Tail bounds
//---------------------------------------------------------------------------//

namespace
{
struct AxisEnvelope
{
    double width;  // sup of |F^|
    double count;  // |F^(t)| <= count / (pi |t|)
};

double envelope_sq(AxisEnvelope const& e, double t)
{
    double decay = e.count / (pi * std::abs(t));
    double v = std::min(e.width, decay);
    return v * v;
}

// sum over all unit cubes [k, k+1) of sup |F^|^2 on the cube
double full_axis_sum(AxisEnvelope const& e)
{
    constexpr int terms = 4096;
    double s = e.width * e.width;
    for (int m = 1; m < terms; ++m)
        s += envelope_sq(e, m);
    // sum_{m >= M} 1/m^2 <= 1/(M - 1/2) by convexity
    s += e.count * e.count / (pi * pi * (terms - 0.5));
    return 2 * s;
}

// cubes holding points at distance >= t on either side
double tail_axis_sum(AxisEnvelope const& e, double t)
{
    double k0 = std::floor(t);
    double per_side = envelope_sq(e, t)
                      + e.count * e.count / (pi * pi * (k0 + 0.5));
    return 2 * per_side;
}
}  // namespace

TailBound tail_bound(Domain const& u, double rho, double radius, double extent)
{
    if (!(rho > 0))
        throw std::invalid_argument("density bound must be positive");
    if (!(radius > u.diameter()) || !(radius - extent >= 1.0))
        throw RadiusTooSmall("window radius too small for a tail bound");

    std::vector<AxisEnvelope> env;
    bool rigorous = false;
    if (auto factors = u.factors())
    {
        rigorous = true;
        for (auto const& f : *factors)
            env.push_back({f.measure().to_double(),
                           static_cast<double>(f.boxes().size())});
    }
    else
    {
        Box bb = u.bounding_box();
        for (std::size_t j = 0; j < u.dim(); ++j)
            env.push_back({(bb.hi[j] - bb.lo[j]).to_double(),
                           static_cast<double>(u.boxes().size())});
        // Scale the first axis so that the envelope at 0 is |U|
        env[0].width = u.measure().to_double();
        for (std::size_t j = 1; j < u.dim(); ++j)
            env[0].width /= env[j].width;
    }

    double const t = radius - extent;
    double total = 0;
    for (std::size_t j = 0; j < env.size(); ++j)
    {
        double term = tail_axis_sum(env[j], t);
        for (std::size_t i = 0; i < env.size(); ++i)
            if (i != j)
                term *= full_axis_sum(env[i]);
        total += term;
    }
    return TailBound{radius, rho * total, rigorous};
}

}  // namespace spectral
