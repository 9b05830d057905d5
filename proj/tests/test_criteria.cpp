#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "spectral/criteria.hpp"
#include "spectral/errors.hpp"

using namespace spectral;
using spectral::test::R;
using spectral::test::V;

namespace
{
constexpr double tol = 1e-9;

PeriodicSet columns(std::initializer_list<char const*> shifts)
{
    std::vector<Rational> s;
    for (auto const* x : shifts)
        s.push_back(R(x));
    return shifted_columns_periodic(s);
}

WindowSet exact_window(std::initializer_list<char const*> pts, char const* r)
{
    WindowSet w;
    w.dim = 1;
    std::vector<RVec> ex;
    for (auto const* p : pts)
    {
        ex.push_back(V({p}));
        w.points.push_back({R(p).to_double()});
    }
    w.exact = ex;
    w.window = make_box({-R(r)}, {R(r)});
    return w;
}
}  // namespace

TEST_CASE("coset escape")
{
    auto axes = zero_set(Domain::cube(1)).axes();
    // 1 + 2Z misses 0 and lies in Z
    CHECK_FALSE(find_coset_escape(axes, V({"1"}), V({"2"})));
    auto v = find_coset_escape(axes, V({"1/2"}), V({"2"}));
    REQUIRE(v);
    CHECK(mod((*v)[0], Rational(2)) == R("1/2"));

    auto sq = zero_set(Domain::cube(2)).axes();
    // (1, 1/2) + diag(2,1) Z^2: first coordinate odd, always a root
    CHECK_FALSE(find_coset_escape(sq, V({"1", "1/2"}), V({"2", "1"})));
    // L itself: (2a, b) with both zero only at the origin
    CHECK_FALSE(find_coset_escape(sq, V({"0", "0"}), V({"2", "1"})));
    // L = diag(2, 1/2): (0, 1/2) escapes
    auto w = find_coset_escape(sq, V({"0", "0"}), V({"2", "1/2"}));
    REQUIRE(w);
    CHECK((*w)[0].is_zero());
    CHECK_FALSE((*w)[1].is_integer());
}

TEST_CASE("orthogonality examples")
{
    for (std::size_t d = 1; d <= 3; ++d)
        CHECK(check_orthogonality(Domain::cube(d), test::integer_lattice(d), tol)
                  .holds());

    auto v = check_orthogonality(Domain::cube(1), exact_window({"0", "1/2"}, "2"),
                                 tol);
    REQUIRE(v.fails());
    auto const& w = std::get<DifferenceWitness>(*v.witness);
    CHECK(w.difference.exact->at(0).abs() == R("1/2"));
    CHECK(w.abs_ft == doctest::Approx(2 / std::numbers::pi));

    CHECK(check_orthogonality(test::two_interval(),
                              exact_window({"0", "1/2"}, "2"), tol)
              .holds());

    // Numeric window: Z with a float perturbation is still classified
    WindowSet f;
    f.dim = 1;
    f.points = {{0.0}, {1.0}, {2.0 + 1e-3}};
    f.window = make_box(V({"-5"}), V({"5"}));
    CHECK(check_orthogonality(Domain::cube(1), f, tol).fails());
    f.points[2][0] = 2.0;
    auto ok = check_orthogonality(Domain::cube(1), f, tol);
    CHECK(ok.holds());
    CHECK_FALSE(ok.margins.empty());

    CHECK_THROWS_AS(check_orthogonality(Domain::cube(2), test::integer_lattice(1),
                                        tol),
                    DimensionMismatch);
}

TEST_CASE("orthogonality on a non-product domain is inconclusive at best")
{
    auto l = Domain::from_boxes({make_box(V({"0", "0"}), V({"1", "1/2"})),
                                 make_box(V({"0", "1/2"}), V({"1/2", "1"}))});
    auto v = check_orthogonality(l, test::integer_lattice(2), tol);
    CHECK(v.status != Status::holds);
    if (v.status == Status::inconclusive)
        CHECK(std::any_of(v.margins.begin(), v.margins.end(),
                          [](Margin const& m) { return m.near; }));
}

TEST_CASE("spectrum examples")
{
    for (std::size_t d = 1; d <= 3; ++d)
    {
        auto [v, cert] = check_spectrum_periodic(Domain::cube(d),
                                                 test::integer_lattice(d), tol);
        CHECK(v.holds());
        CHECK(cert.all_exact);
        CHECK(cert.density == Rational(1));
    }

    auto [half, hc] = check_spectrum_periodic(
        Domain::cube(1), test::periodic_1d("2", {"0", "1/2"}), tol);
    REQUIRE(half.fails());
    auto const& dw = std::get<DualWitness>(*half.witness);
    CHECK(dw.dual.xi.at(0).abs() == R("1/2"));
    CHECK(std::abs(dw.dual.weight) == doctest::Approx(std::sqrt(2.0)));

    auto [two, tc] = check_spectrum_periodic(
        test::two_interval(), test::periodic_1d("2", {"0", "1/2"}), tol);
    CHECK(two.holds());
    CHECK(tc.dual_points.size() == 2);

    auto [col, cc] = check_spectrum_periodic(Domain::cube(2),
                                             columns({"0", "1/2"}), tol);
    CHECK(col.holds());
    CHECK(cc.dual_points.size() == 2);

    auto [dens, dc] = check_spectrum_periodic(
        Domain::cube(1), test::periodic_1d("2", {"0"}), tol);
    REQUIRE(dens.fails());
    CHECK(std::holds_alternative<DensityWitness>(*dens.witness));

    CHECK_THROWS_AS(check_spectrum_periodic(Domain::intervals({{R("0"), R("2")}}),
                                            test::integer_lattice(1), tol),
                    MeasureNotOne);
}

TEST_CASE("set tiling examples")
{
    CHECK(check_set_tiling(Domain::cube(2), test::integer_lattice(2)).holds());
    CHECK(check_set_tiling(test::two_interval(),
                           test::periodic_1d("2", {"0", "3/2"}))
              .holds());
    auto gap = check_set_tiling(Domain::cube(1),
                                test::periodic_1d("2", {"0", "1/3"}));
    REQUIRE(gap.fails());
    CHECK(std::holds_alternative<CellWitness>(*gap.witness));
}

TEST_CASE("defect checks")
{
    auto z = window(test::integer_lattice(1), make_box(V({"-1000"}), V({"1000"})));
    DefectOptions o;
    o.grid = GridSpec{{0.0}, {1.0}, {512}};
    auto v = check_tiling_defect(Domain::cube(1), z, o);
    CHECK(v.holds());
    CHECK(v.margins.front().value <= 3e-4);

    o.serial = true;
    auto s = check_tiling_defect(Domain::cube(1), z, o);
    CHECK(s.margins.front().value == v.margins.front().value);

    WindowSet single = exact_window({"0"}, "1000");
    auto p = check_packing_defect(Domain::cube(1), single, {});
    CHECK(p.holds());
    CHECK(check_tiling_defect(Domain::cube(1), single, {}).fails());

    auto half = window(test::periodic_1d("1", {"0", "1/2"}),
                       make_box(V({"-1000"}), V({"1000"})));
    CHECK(check_packing_defect(Domain::cube(1), half, {}).fails());

    WindowSet tiny = exact_window({"0"}, "1");
    CHECK_THROWS_AS(check_tiling_defect(Domain::cube(1), tiny, {}),
                    RadiusTooSmall);
}

TEST_CASE("opr and tight pairs")
{
    CHECK(check_opr(Domain::cube(2), Domain::cube(2), tol).holds());
    CHECK(check_opr(test::two_interval(), test::two_interval(), tol).holds());
    auto f = check_opr(Domain::cube(1), Domain::intervals({{R("0"), R("2")}}), tol);
    REQUIRE(f.fails());
    auto const& rw = std::get<RootWitness>(*f.witness);
    CHECK(rw.root.exact->at(0).abs() == Rational(1));

    CHECK(check_tight_pair(Domain::cube(1), Domain::cube(1), tol).holds());
    CHECK(check_tight_pair(test::two_interval(), test::two_interval(), tol)
              .holds());
    auto m = check_tight_pair(Domain::cube(1),
                              Domain::intervals({{R("0"), R("1/2")}}), tol);
    REQUIRE(m.fails());
    CHECK(std::holds_alternative<MeasureWitness>(*m.witness));
}

TEST_CASE("opr with irrational roots")
{
    // Roots near 0.1475 and 0.8963 (period 2) are irrational
    auto u = Domain::intervals(
        {{R("-1/2"), R("1/2")}, {R("1"), R("3")}, {R("-3"), R("-1")}});
    auto inside = check_opr(u, Domain::intervals({{R("0"), R("1/4")}}), tol);
    REQUIRE(inside.fails());
    CHECK(std::get<RootWitness>(*inside.witness).error_bound > 0);
    CHECK(check_opr(u, Domain::intervals({{R("0"), R("1/8")}}), tol).holds());
}

TEST_CASE("keller examples")
{
    CHECK(check_keller(Domain::cube(2), test::integer_lattice(2), Domain::cube(2),
                       tol)
              .holds());
    CHECK(check_keller(Domain::cube(2), columns({"0", "1/2"}), Domain::cube(2),
                       tol)
              .holds());
    CHECK_THROWS_AS(check_keller(Domain::cube(1),
                                 test::periodic_1d("2", {"0", "1/3"}),
                                 Domain::cube(1), tol),
                    PreconditionFailed);
    CHECK_THROWS_AS(check_keller(Domain::cube(1), test::integer_lattice(1),
                                 Domain::intervals({{R("0"), R("1/2")}}), tol),
                    PreconditionFailed);
    // A translated tiling is moved to contain 0 first
    CHECK(check_keller(Domain::cube(2),
                       columns({"1/3", "1/2"}).translated(V({"1/5", "1/7"})),
                       Domain::cube(2), tol)
              .holds());
}

TEST_CASE("transfer harness examples")
{
    TileSpec ps{TileSpec::Kind::power_spectrum, Domain::cube(1)};
    TileSpec ind{TileSpec::Kind::indicator, Domain::cube(1)};
    auto both = transfer_harness(ps, ind, test::integer_lattice(1), tol);
    CHECK(both.holds());
    CHECK(both.notes.back() == "both tile");

    auto neither = transfer_harness(ps, ind, test::periodic_1d("2", {"0"}), tol);
    CHECK(neither.holds());
    CHECK(neither.notes.back() == "neither tiles");

    TileSpec wide{TileSpec::Kind::indicator, Domain::intervals({{R("0"), R("2")}})};
    CHECK_THROWS_AS(transfer_harness(ind, wide, test::integer_lattice(1), tol),
                    IntegralMismatch);
    CHECK_THROWS_AS(transfer_harness(ps, ind, test::periodic_1d("1", {"0", "1/2"}),
                                     tol),
                    PreconditionFailed);

    for (std::size_t d = 2; d <= 3; ++d)
    {
        TileSpec p{TileSpec::Kind::power_spectrum, Domain::cube(d)};
        TileSpec i{TileSpec::Kind::indicator, Domain::cube(d)};
        CHECK(transfer_harness(p, i, test::integer_lattice(d), tol).holds());
    }
}

TEST_CASE("measure bound examples")
{
    CHECK(check_opr_measure_bound(Domain::cube(2), test::integer_lattice(2),
                                  Domain::cube(2), tol)
              .holds());
    auto sub = check_opr_measure_bound(Domain::cube(1), test::integer_lattice(1),
                                       Domain::intervals({{R("-1/4"), R("1/4")}}),
                                       tol);
    CHECK(sub.holds());
    CHECK(sub.margins.back().value == 0.5);
    CHECK(check_opr_measure_bound(test::two_interval(),
                                  test::periodic_1d("2", {"0", "1/2"}),
                                  test::two_interval(), tol)
              .holds());
    CHECK_THROWS_AS(check_opr_measure_bound(Domain::cube(1),
                                            test::integer_lattice(1),
                                            Domain::intervals({{R("0"), R("2")}}),
                                            tol),
                    PreconditionFailed);
}

TEST_CASE("duality roundtrip examples")
{
    CHECK(duality_roundtrip(Domain::cube(2), Domain::cube(2),
                            test::integer_lattice(2), tol)
              .holds());
    auto t = duality_roundtrip(test::two_interval(), test::two_interval(),
                               test::periodic_1d("2", {"0", "3/2"}), tol);
    CHECK(t.holds());
    auto f = duality_roundtrip(Domain::cube(1), Domain::cube(1),
                               test::periodic_1d("2", {"0", "1/2"}), tol);
    CHECK(f.holds());
    CHECK(f.notes.back() == "both fail");
    CHECK_THROWS_AS(duality_roundtrip(Domain::cube(1),
                                      Domain::intervals({{R("0"), R("2")}}),
                                      test::integer_lattice(1), tol),
                    PreconditionFailed);
}

TEST_CASE("spectrum implies orthogonality; tiling implies unit density")
{
    std::mt19937_64 rng(19);
    int spectra = 0;
    for (int trial = 0; trial < 300; ++trial)
    {
        auto u = test::random_union(rng, 4);
        if (u.measure() != Rational(1))
            continue;
        std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 4);
        std::vector<RVec> reps;
        for (std::int64_t k = 0; k < 4 * c; ++k)
            if (rng() % 4 == 0)
                reps.push_back({Rational(k, 4)});
        if (reps.empty())
            continue;
        PeriodicSet s(Lattice::diagonal({Rational(c)}), reps);
        auto [sv, cert] = check_spectrum_periodic(u, s, tol);
        if (sv.holds())
        {
            ++spectra;
            CHECK(check_orthogonality(u, s, tol).holds());
        }
        if (check_set_tiling(u, s).holds())
            CHECK(density(s) * u.measure() == Rational(1));
    }
    CHECK(spectra > 0);
}

TEST_CASE("checks are translation invariant")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial)
    {
        auto u = test::random_union(rng, 2);
        std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 3);
        std::vector<RVec> reps;
        for (std::int64_t k = 0; k < 2 * c; ++k)
            if (rng() % 2 == 0)
                reps.push_back({Rational(k, 2)});
        if (reps.empty())
            reps.push_back({Rational(0)});
        PeriodicSet s(Lattice::diagonal({Rational(c)}), reps);
        RVec t{Rational(static_cast<std::int64_t>(rng() % 13) - 6, 5)};

        CHECK(check_set_tiling(u, s).status
              == check_set_tiling(u.translated(t), s.translated(t)).status);
        CHECK(check_orthogonality(u, s, tol).status
              == check_orthogonality(u.translated(t), s.translated(t), tol).status);
        if (u.measure() == Rational(1))
            CHECK(check_spectrum_periodic(u, s, tol).first.status
                  == check_spectrum_periodic(u.translated(t), s.translated(t), tol)
                         .first.status);
    }
}

TEST_CASE("verdict invariants")
{
    auto v = Verdict::make_inconclusive({"x", 1.0, false});
    CHECK(v.margins.front().near);
    auto f = check_set_tiling(Domain::cube(1), test::periodic_1d("2", {"0"}));
    CHECK(f.fails());
    CHECK(f.witness.has_value());
    CHECK(std::string(witness_kind(*f.witness)) == "cell");
}

TEST_CASE("shifted columns defect in the plane")
{
    auto box = make_box(V({"-60", "-60"}), V({"60", "60"}));
    auto s = shifted_column_cubes(std::vector<Rational>{R("0"), R("1/3")}, box);
    DefectOptions o;
    o.grid = GridSpec::unit_cell(2, 16);
    auto v = check_tiling_defect(Domain::cube(2), s, o);
    CHECK(v.holds());
    CHECK(v.margins.front().value <= 2e-2);
}
