#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "spectral/errors.hpp"
#include "spectral/fourier.hpp"

using namespace spectral;
using spectral::test::R;
using spectral::test::V;

namespace
{
constexpr double pi = std::numbers::pi;

double at(Domain const& u, double x)
{
    return std::abs(ft_indicator(u, std::span<double const>(&x, 1)));
}

// Quadrature of exp(-2 pi i xi t) over each box (nested per axis)
Complex quadrature_ft(Domain const& u, std::vector<double> const& xi)
{
    using boost::math::quadrature::gauss_kronrod;
    Complex total = 0;
    for (auto const& b : u.boxes())
    {
        Complex prod = 1;
        for (std::size_t j = 0; j < b.dim(); ++j)
        {
            double lo = b.lo[j].to_double(), hi = b.hi[j].to_double();
            double w = xi[j];
            double re = gauss_kronrod<double, 61>::integrate(
                [w](double t) { return std::cos(2 * pi * w * t); }, lo, hi, 15,
                1e-13);
            double im = gauss_kronrod<double, 61>::integrate(
                [w](double t) { return -std::sin(2 * pi * w * t); }, lo, hi,
                15, 1e-13);
            prod *= Complex(re, im);
        }
        total += prod;
    }
    return total;
}

Domain random_boxes_2d(std::mt19937_64& rng)
{
    // Disjoint boxes in separate horizontal strips
    std::uniform_int_distribution<int> n(1, 3), w(1, 6);
    std::vector<Box> boxes;
    int y = 0;
    int count = n(rng);
    for (int i = 0; i < count; ++i)
    {
        int x0 = w(rng) - 3, y0 = y + w(rng) - 1;
        Box b = make_box({Rational(x0, 4), Rational(y0, 4)},
                         {Rational(x0 + w(rng), 4), Rational(y0 + w(rng), 4)});
        y = static_cast<int>((b.hi[1] * Rational(4)).ceil());
        boxes.push_back(b);
    }
    return Domain::from_boxes(boxes);
}

// Central interval plus a mirrored pair; real transform with sign changes
Domain symmetric_union(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> w(1, 4);
    int q = 2;
    int c = w(rng), gap = w(rng), len = w(rng);
    Rational a(c, 2 * q), b = a + Rational(gap, q), e = b + Rational(len, q);
    return Domain::intervals({{-a, a}, {b, e}, {-e, -b}});
}
}  // namespace

TEST_CASE("ft_indicator examples")
{
    auto q1 = Domain::cube(1);
    CHECK(std::abs(ft_indicator(Domain::cube(3), V({"0", "0", "0"})) - 1.0)
          < 1e-15);
    for (int k = 1; k < 6; ++k)
        CHECK(at(q1, k) < 1e-15);
    CHECK(at(q1, 0.5) == doctest::Approx(2 / pi).epsilon(1e-14));
    CHECK(at(test::two_interval(), 0.5) < 1e-15);

    double half = 0.5;
    CHECK(power_spectrum(q1, std::span<double const>(&half, 1))
          == doctest::Approx(4 / (pi * pi)).epsilon(1e-14));
}

TEST_CASE("small frequencies use the stable form")
{
    auto u = Domain::intervals({{R("1/3"), R("5/2")}});
    double const w = (R("5/2") - R("1/3")).to_double();
    for (double x : {0.0, 1e-12, -1e-9, 3e-7, 1e-6})
    {
        auto v = ft_interval(1.0 / 3.0, 2.5, x);
        CHECK(std::abs(v) == doctest::Approx(w).epsilon(1e-9));
    }
}

TEST_CASE("ft_indicator agrees with quadrature")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xi(-6.0, 6.0);
    for (int trial = 0; trial < 60; ++trial)
    {
        auto u = test::random_union(rng, 4);
        std::vector<double> x{xi(rng)};
        CHECK(std::abs(ft_indicator(u, x) - quadrature_ft(u, x)) < 1e-8);
    }
    for (int trial = 0; trial < 40; ++trial)
    {
        auto u = random_boxes_2d(rng);
        std::vector<double> x{xi(rng), xi(rng)};
        CHECK(std::abs(ft_indicator(u, x) - quadrature_ft(u, x)) < 1e-8);
    }
}

TEST_CASE("hermitian symmetry, value at zero, translation modulus")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> xi(-10.0, 10.0);
    for (int trial = 0; trial < 100; ++trial)
    {
        auto u = random_boxes_2d(rng);
        std::vector<double> x{xi(rng), xi(rng)}, mx{-x[0], -x[1]};
        CHECK(std::abs(ft_indicator(u, mx) - std::conj(ft_indicator(u, x)))
              < 1e-12);
        std::vector<double> zero{0.0, 0.0};
        CHECK(std::abs(ft_indicator(u, zero).real() - u.measure().to_double())
              < 1e-12 * u.measure().to_double());
        RVec t{Rational(static_cast<std::int64_t>(rng() % 17) - 8, 3),
               Rational(static_cast<std::int64_t>(rng() % 11) - 5, 7)};
        CHECK(std::abs(ft_indicator(u.translated(t), x))
              == doctest::Approx(std::abs(ft_indicator(u, x))).epsilon(1e-10));
    }
}

TEST_CASE("roots_1d examples")
{
    auto q = roots_1d(Domain::cube(1));
    CHECK(q.period == Rational(1));
    CHECK(q.rational_phases == std::vector<Rational>{Rational(0)});
    CHECK(q.irrational_phases.empty());
    CHECK_FALSE(q.contains(Rational(0)));
    CHECK(q.contains(Rational(-3)));
    CHECK_FALSE(q.contains(R("1/2")));

    auto t = roots_1d(test::two_interval());
    CHECK(t.period == Rational(2));
    CHECK(t.rational_phases == std::vector<Rational>{R("0"), R("1/2"), R("3/2")});
    CHECK(t.irrational_phases.empty());
    CHECK(t.contains(R("3/2")));
    CHECK(t.contains(R("-1/2")));
    CHECK(t.contains(R("2")));
    CHECK_FALSE(t.contains(R("1")));

    auto w = roots_1d(Domain::intervals({{R("0"), R("2")}}));
    CHECK(w.period == R("1/2"));
    CHECK(w.rational_phases == std::vector<Rational>{Rational(0)});

    auto listed = t.list(2.0);
    std::vector<double> expect{-2, -1.5, -0.5, 0.5, 1.5, 2};
    CHECK(listed == expect);
}

TEST_CASE("every reported root is a zero of the transform")
{
    std::mt19937_64 rng(21);
    int irrational_seen = 0;
    for (int trial = 0; trial < 80; ++trial)
    {
        auto u = trial % 2
                     ? test::random_union(rng, 1 + static_cast<int>(rng() % 4))
                     : symmetric_union(rng);
        auto roots = roots_1d(u);
        for (double x : roots.list(6.0))
        {
            bool exact = std::any_of(
                roots.rational_phases.begin(), roots.rational_phases.end(),
                [&](Rational const& p) {
                    double r = std::fmod(x - p.to_double(),
                                         roots.period.to_double());
                    return std::abs(r) < 1e-12
                           || std::abs(std::abs(r) - roots.period.to_double())
                                  < 1e-12;
                });
            // Error radius 1e-8 times |derivative| <= 2 pi max|t| |U|
            auto bb = u.bounding_box();
            double reach = std::max(std::abs(bb.lo[0].to_double()),
                                    std::abs(bb.hi[0].to_double()));
            double slack = exact ? 1e-10
                                 : 1e-8 * 2 * pi * reach
                                       * u.measure().to_double();
            CHECK(at(u, x) < slack);
            irrational_seen += !exact;
        }
    }
    CHECK(irrational_seen > 0);
}

TEST_CASE("grid scan finds no zeros missing from roots_1d")
{
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 30; ++trial)
    {
        auto u = test::random_union(rng, 1 + static_cast<int>(rng() % 3));
        auto roots = roots_1d(u).list(4.5);
        // Local minima of |1^| with tiny values must sit next to a root
        double const h = 1e-4;
        double prev = at(u, -4.0 - h), cur = at(u, -4.0);
        for (double x = -4.0; x < 4.0; x += h)
        {
            double next = at(u, x + h);
            if (cur <= prev && cur <= next && cur < 1e-4)
            {
                bool near = std::any_of(roots.begin(), roots.end(),
                                        [&](double r) {
                                            return std::abs(r - x) < 2 * h;
                                        });
                CHECK_MESSAGE(near, "missing root near " << x);
            }
            prev = cur;
            cur = next;
        }
    }
}

TEST_CASE("zero_set forms and membership")
{
    auto cube = zero_set(Domain::cube(3));
    REQUIRE(std::holds_alternative<ProductHyperplanes>(cube.form));
    for (auto const& ax : cube.axes())
    {
        CHECK(ax.period == Rational(1));
        CHECK(ax.rational_phases == std::vector<Rational>{Rational(0)});
    }

    auto z2 = zero_set(Domain::cube(2));
    std::vector<double> mixed{3.0, 0.7};
    CHECK(in_zero_set(z2, std::span<double const>(mixed), 1e-9)
          == Membership::yes);
    CHECK(in_zero_set(z2, V({"1/2", "1/2"}), 1e-9) == Membership::no);
    CHECK(in_zero_set(z2, V({"0", "-2"}), 1e-9) == Membership::yes);
    CHECK(in_zero_set(z2, V({"0", "0"}), 1e-9) == Membership::no);

    auto t = zero_set(test::two_interval());
    CHECK(std::holds_alternative<Roots1D>(t.form));
    CHECK(in_zero_set(t, V({"3/2"}), 1e-9) == Membership::yes);

    auto l = Domain::from_boxes(
        {make_box(V({"0", "0"}), V({"1", "1"})),
         make_box(V({"1", "0"}), V({"2", "1/2"}))});
    auto numeric = zero_set(l);
    CHECK(std::holds_alternative<NumericOnly>(numeric.form));
    CHECK_FALSE(numeric.structured());
    std::vector<double> origin{0.0, 0.0};
    CHECK(in_zero_set(numeric, std::span<double const>(origin), 1e-9)
          == Membership::no);

    // Declared products keep their structure
    auto p = Domain::product({test::two_interval(), Domain::cube(1)});
    auto zp = zero_set(p);
    REQUIRE(std::holds_alternative<ProductHyperplanes>(zp.form));
    CHECK(in_zero_set(zp, V({"1/2", "1/3"}), 1e-9) == Membership::yes);
    CHECK(in_zero_set(zp, V({"1", "1/3"}), 1e-9) == Membership::no);
}

TEST_CASE("near band of numeric membership")
{
    auto z = zero_set(Domain::cube(1));
    double const tol = 1e-6;
    // |1^(1 + e)| ~ |e| near the root
    std::vector<double> inside{1.0 + 5e-7}, band{1.0 + 5e-6}, out{1.1};
    CHECK(in_zero_set(z, std::span<double const>(inside), tol)
          == Membership::yes);
    CHECK(in_zero_set(z, std::span<double const>(band), tol)
          == Membership::near);
    CHECK(in_zero_set(z, std::span<double const>(out), tol) == Membership::no);
}

TEST_CASE("tail bound for the unit interval")
{
    auto tb = tail_bound(Domain::cube(1), 1.0, 1000.0);
    CHECK(tb.rigorous);
    CHECK(tb.bound == doctest::Approx(2.03e-4).epsilon(0.01));

    // Direct tail sums of the lattice Z stay below the bound
    for (double x : {0.0, 0.13, 0.5, 0.77, 0.999})
    {
        double s = 0;
        for (long n = 1000; n < 4'000'000; ++n)
        {
            double a = std::sin(pi * (x - n)) / (pi * (x - n));
            double b = std::sin(pi * (x + n)) / (pi * (x + n));
            s += a * a + b * b;
        }
        CHECK(s < tb.bound);
    }

    auto far = tail_bound(Domain::cube(1), 1.0, 1e6);
    CHECK(far.bound / tb.bound == doctest::Approx(1e-3).epsilon(0.01));

    auto l = Domain::from_boxes(
        {make_box(V({"0", "0"}), V({"1", "1"})),
         make_box(V({"1", "0"}), V({"2", "1/2"}))});
    CHECK_FALSE(tail_bound(l, 1.0, 60.0).rigorous);
    CHECK(tail_bound(Domain::cube(2), 1.0, 60.0).rigorous);

    CHECK_THROWS_AS(tail_bound(Domain::cube(1), 1.0, 0.5), RadiusTooSmall);
}
