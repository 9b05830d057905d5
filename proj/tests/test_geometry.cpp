#include <doctest.h>

#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "spectral/errors.hpp"
#include "spectral/geometry.hpp"
#include "spectral/lattice.hpp"

using namespace spectral;
using spectral::test::R;
using spectral::test::V;

TEST_CASE("rational canonical form and parsing")
{
    Rational a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(R("3/2") + R("1/2") == Rational(2));
    CHECK(R("-0.25") == Rational(-1, 4));
    CHECK(R("1e-3") == Rational(1, 1000));
    CHECK(R("7") == Rational(7));
    CHECK(R("-7/3").floor() == -3);
    CHECK(R("-7/3").ceil() == -2);
    CHECK(mod(R("-1/2"), R("2")) == R("3/2"));
    CHECK(lcm(R("2/3"), R("1/2")) == Rational(2));
    CHECK(R("3/4").str() == "3/4");
    CHECK_THROWS_AS(R("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(2), std::overflow_error);
}

TEST_CASE("matrix inverse and determinant are exact")
{
    auto m = RMatrix::from_columns({V({"1", "0"}), V({"1", "2"})});
    CHECK(m.determinant() == Rational(2));
    auto inv = m.inverse();
    CHECK(inv * m == RMatrix::identity(2));
}

TEST_CASE("validate_domain")
{
    auto q = Domain::intervals({{R("-1/2"), R("1/2")}});
    CHECK(q.measure() == Rational(1));
    CHECK(test::two_interval().measure() == Rational(1));
    CHECK(Domain::intervals({{R("0"), R("2")}}).measure() == Rational(2));
    CHECK(Domain::cube(2).measure() == Rational(1));

    try
    {
        Domain::intervals({{R("0"), R("1")}, {R("1/2"), R("3/2")}});
        FAIL("expected overlap");
    }
    catch (OverlapError const& e)
    {
        CHECK(e.first() == 0);
        CHECK(e.second() == 1);
        CHECK(e.point() == V({"3/4"}));
    }

    CHECK_THROWS_AS(Domain::from_boxes({make_box(V({"0"}), V({"1"})),
                                        make_box(V({"2", "0"}), V({"3", "1"}))}),
                    DimensionMismatch);
    CHECK_THROWS_AS(make_box(V({"1"}), V({"1"})), std::invalid_argument);
    // Touching boxes are fine
    CHECK_NOTHROW(Domain::intervals({{R("0"), R("1")}, {R("1"), R("2")}}));
}

TEST_CASE("minkowski difference and open membership")
{
    auto qq = minkowski_difference(Domain::cube(1), Domain::cube(1));
    REQUIRE(qq.boxes.size() == 1);
    CHECK(qq.boxes[0] == make_box(V({"-1"}), V({"1"})));
    CHECK(qq.contains(V({"0"})));

    auto om = test::two_interval();
    auto body = minkowski_difference(om, om);
    CHECK(body.contains(V({"1"})));
    CHECK_FALSE(body.contains(V({"1/2"})));
    CHECK_FALSE(body.contains(V({"-1/2"})));
    CHECK(body.contains(V({"0"})));
    CHECK_FALSE(body.contains(V({"3/2"})));

    auto far = minkowski_difference(Domain::intervals({{R("0"), R("1")}}),
                                    Domain::intervals({{R("2"), R("3")}}));
    CHECK(far.boxes[0] == make_box(V({"-3"}), V({"-1"})));
    CHECK_THROWS_AS(minkowski_difference(Domain::cube(1), Domain::cube(2)),
                    DimensionMismatch);
}

TEST_CASE("difference body is symmetric and contains zero")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial)
    {
        auto u = test::random_union(rng, 4);
        auto body = minkowski_difference(u, u);
        CHECK(body.contains(RVec{Rational(0)}));
        for (int k = -40; k <= 40; ++k)
        {
            RVec p{Rational(k, 8)};
            CHECK(body.contains(p) == body.contains(-p));
        }
    }
}

TEST_CASE("multiplicity examples")
{
    auto m = multiplicity(Domain::cube(2), test::integer_lattice(2));
    CHECK(m.level_min == 1);
    CHECK(m.level_max == 1);
    CHECK(m.is_tiling());

    auto half = test::periodic_1d("1/2", {"0"});
    auto m2 = multiplicity(Domain::cube(1), half, 2);
    CHECK(m2.level_min == 2);
    CHECK(m2.level_max == 2);

    auto m3 = multiplicity(test::two_interval(),
                           test::periodic_1d("2", {"0", "1/2"}));
    CHECK(m3.is_tiling());

    auto gap = multiplicity(Domain::cube(1),
                            test::periodic_1d("2", {"0", "1/3"}));
    CHECK(gap.level_min == 0);
    CHECK(gap.level_max == 2);
    CHECK_FALSE(gap.defect_cells.empty());
}

TEST_CASE("multiplicity agrees with Monte-Carlo counts")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto u = test::random_union(rng, 4);
        int c = std::uniform_int_distribution<int>(1, 4)(rng);
        std::vector<RVec> reps;
        for (int k = 0; k < 4 * c; ++k)
            if (rng() % 3 == 0)
                reps.push_back({Rational(k, 4)});
        if (reps.empty())
            reps.push_back({Rational(0)});
        PeriodicSet s(Lattice::diagonal({Rational(c)}), reps);
        auto m = multiplicity(u, s);

        Box const w = make_box({Rational(-40)}, {Rational(40)});
        auto pts = window(s, w);
        std::uniform_real_distribution<double> x01(0.0, static_cast<double>(c));
        for (int i = 0; i < 50; ++i)
        {
            double x = x01(rng);
            int count = 0;
            for (auto const& p : pts.points)
            {
                double y = x - p[0];
                count += u.contains(std::span<double const>(&y, 1));
            }
            CHECK(count == m.level_at(std::span<double const>(&x, 1)));
        }

        // Average level equals density times measure
        Rational avg = m.integrated_level() / Rational(c);
        CHECK(avg == density(s) * u.measure());
    }
}

TEST_CASE("multiplicity is translation invariant")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial)
    {
        auto u = test::random_union(rng, 3);
        auto s = test::periodic_1d("3", {"0", "1/3", "4/3"});
        Rational t(std::uniform_int_distribution<int>(-12, 12)(rng), 6);
        auto a = multiplicity(u, s);
        auto b = multiplicity(u.translated({t}), s);
        auto c = multiplicity(u, s.translated({t}));
        CHECK(a.level_min == b.level_min);
        CHECK(a.level_max == b.level_max);
        CHECK(a.level_min == c.level_min);
        CHECK(a.level_max == c.level_max);
    }
}

TEST_CASE("multiplicity cells partition the fundamental cell")
{
    auto m = multiplicity(test::two_interval(),
                          test::periodic_1d("2", {"0", "3/2"}));
    Rational total{0};
    for (auto const& c : m.cells)
        total += c.cell.measure();
    CHECK(total == Rational(2));
    CHECK(m.is_tiling());
}
