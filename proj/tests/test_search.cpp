#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "spectral/errors.hpp"
#include "spectral/search.hpp"

using namespace spectral;
using spectral::test::R;
using spectral::test::V;

namespace
{
using RepSet = std::vector<RVec>;

SearchProblem problem(Domain u, RVec period, char const* step, SearchMode mode)
{
    return SearchProblem{std::move(u), std::move(period), R(step), mode};
}

std::set<RepSet> reps_of(std::vector<SearchSolution> const& sols)
{
    std::set<RepSet> out;
    for (auto const& s : sols)
        out.insert(s.set.reps());
    return out;
}

// Every k-subset of the vertices, checked directly
std::set<RepSet> brute_force(SearchProblem const& p)
{
    auto const verts = p.vertices();
    auto const k = static_cast<std::size_t>(p.target_count());
    auto const lat = Lattice::diagonal(p.period);
    std::set<RepSet> out;
    std::size_t const n = verts.size();
    if (n > 20)
        throw std::logic_error("too many vertices for brute force");
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k)
            continue;
        RepSet reps;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u)
                reps.push_back(verts[i]);
        PeriodicSet s(lat, reps);
        if (p.normalize && !s.contains_zero())
            continue;
        bool ok = p.mode == SearchMode::spectra
                      ? check_spectrum_periodic(p.domain, s, 1e-9).first.holds()
                      : check_set_tiling(p.domain, s).holds();
        if (ok)
            out.insert(s.reps());
    }
    return out;
}
}  // namespace

TEST_CASE("problem invariants")
{
    auto p = problem(Domain::cube(1), V({"2"}), "1/2", SearchMode::spectra);
    CHECK(p.target_count() == 2);
    CHECK(p.vertices() == std::vector<RVec>{V({"0"}), V({"1/2"}), V({"1"}),
                                            V({"3/2"})});
    p.period = V({"3/2"});
    CHECK_THROWS_AS(p.target_count(), std::invalid_argument);
    p.period = V({"2"});
    p.grid_step = R("3/4");
    CHECK_THROWS_AS(p.vertices(), std::invalid_argument);

    p.candidates = std::vector<RVec>{V({"5/2"}), V({"1/2"}), V({"-3/2"})};
    CHECK(p.vertices() == std::vector<RVec>{V({"1/2"})});
}

TEST_CASE("compatibility graph examples")
{
    auto p = problem(Domain::cube(1), V({"2"}), "1/2", SearchMode::spectra);
    auto g = compatibility_graph(p);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent[0][2]);
    CHECK(g.adjacent[1][3]);
    CHECK_FALSE(g.adjacent[0][1]);
    CHECK(g.self_compatible);

    auto t = compatibility_graph(
        problem(test::two_interval(), V({"2"}), "1/2", SearchMode::spectra));
    CHECK(t.adjacent[0][1]);
    CHECK(t.adjacent[0][3]);

    auto e = p;
    e.candidates = std::vector<RVec>{};
    auto eg = compatibility_graph(e);
    CHECK(eg.vertices.empty());
    CHECK(eg.edge_count() == 0);
    CHECK(search(e).empty());

    // Adjacency is symmetric and loop-free
    auto q = compatibility_graph(
        problem(Domain::cube(2), V({"2", "1"}), "1/2", SearchMode::tilings));
    for (std::size_t i = 0; i < q.vertices.size(); ++i)
    {
        CHECK_FALSE(q.adjacent[i][i]);
        for (std::size_t j = 0; j < q.vertices.size(); ++j)
            CHECK(q.adjacent[i][j] == q.adjacent[j][i]);
    }
}

TEST_CASE("search examples")
{
    auto z = search_spectra(
        problem(Domain::cube(1), V({"1"}), "1/2", SearchMode::spectra));
    CHECK(reps_of(z) == std::set<RepSet>{{V({"0"})}});

    auto two = problem(test::two_interval(), V({"2"}), "1/2", SearchMode::spectra);
    std::set<RepSet> const expect{{V({"0"}), V({"1/2"})}, {V({"0"}), V({"3/2"})}};
    CHECK(reps_of(search_spectra(two)) == expect);
    CHECK(reps_of(search_tilings(two)) == expect);

    auto q2 = search_spectra(
        problem(Domain::cube(1), V({"2"}), "1/2", SearchMode::spectra));
    CHECK(reps_of(q2) == std::set<RepSet>{{V({"0"}), V({"1"})}});
    for (auto const& s : q2)
    {
        REQUIRE(s.certificate);
        CHECK(s.certificate->all_exact);
    }

    auto cols = search_tilings(
        problem(Domain::cube(2), V({"2", "1"}), "1/2", SearchMode::tilings));
    CHECK(reps_of(cols).count({V({"0", "0"}), V({"1", "1/2"})}) == 1);

    CHECK(reps_of(search_tilings(
              problem(Domain::cube(1), V({"1"}), "1/2", SearchMode::tilings)))
          == std::set<RepSet>{{V({"0"})}});

    CHECK_THROWS_AS(search_spectra(problem(Domain::intervals({{R("0"), R("2")}}),
                                           V({"2"}), "1/2", SearchMode::spectra)),
                    MeasureNotOne);
}

TEST_CASE("duality scan examples")
{
    auto p = problem(Domain::cube(1), V({"1"}), "1/2", SearchMode::spectra);
    CHECK(duality_scan(Domain::cube(1), Domain::cube(1), p, 1e-9).holds());
    auto p2 = problem(Domain::cube(2), V({"1", "1"}), "1/2", SearchMode::spectra);
    CHECK(duality_scan(Domain::cube(2), Domain::cube(2), p2, 1e-9).holds());
    auto t = problem(test::two_interval(), V({"2"}), "1/2", SearchMode::spectra);
    CHECK(duality_scan(test::two_interval(), test::two_interval(), t, 1e-9)
              .holds());
    CHECK_THROWS_AS(duality_scan(Domain::cube(1),
                                 Domain::intervals({{R("0"), R("2")}}), p, 1e-9),
                    PreconditionFailed);
}

TEST_CASE("search agrees with brute force on small grids")
{
    std::mt19937_64 rng(31);
    int problems = 0;
    for (int trial = 0; trial < 400 && problems < 80; ++trial)
    {
        auto u = test::random_union(rng, 4);
        Rational m = u.measure();
        // Period making k integral, vertices at most 12
        for (std::int64_t k = 1; k <= 4; ++k)
        {
            Rational c = m * Rational(k);
            for (char const* step : {"1/2", "1/4"})
            {
                Rational n = c / R(step);
                if (!n.is_integer() || n.num() > 12)
                    continue;
                for (auto mode : {SearchMode::spectra, SearchMode::tilings})
                {
                    if (mode == SearchMode::spectra && m != Rational(1))
                        continue;
                    for (bool norm : {true, false})
                    {
                        auto p = problem(u, {c}, step, mode);
                        p.normalize = norm;
                        auto got = search(p);
                        CHECK(reps_of(got) == brute_force(p));
                        CHECK(got.size() == reps_of(got).size());
                        ++problems;
                    }
                }
            }
        }
    }
    CHECK(problems >= 40);
}

TEST_CASE("solutions verify and are closed under grid translation")
{
    auto p = problem(Domain::cube(2), V({"2", "1"}), "1/2", SearchMode::tilings);
    p.normalize = false;
    auto sols = search(p);
    auto const all = reps_of(sols);
    CHECK_FALSE(all.empty());
    auto const lat = Lattice::diagonal(p.period);
    for (auto const& s : sols)
    {
        CHECK(check_set_tiling(p.domain, s.set).holds());
        for (auto const& step : {V({"1/2", "0"}), V({"0", "1/2"})})
        {
            RepSet moved;
            for (auto const& r : s.set.reps())
                moved.push_back(r + step);
            CHECK(all.count(PeriodicSet(lat, moved).reps()) == 1);
        }
    }

    auto sp = problem(test::two_interval(), V({"2"}), "1/4", SearchMode::spectra);
    sp.normalize = false;
    auto specs = search(sp);
    auto const sall = reps_of(specs);
    for (auto const& s : specs)
    {
        CHECK(check_spectrum_periodic(sp.domain, s.set, 1e-9).first.holds());
        RepSet moved;
        for (auto const& r : s.set.reps())
            moved.push_back(r + V({"1/4"}));
        CHECK(sall.count(PeriodicSet(Lattice::diagonal(sp.period), moved).reps())
              == 1);
    }
}

TEST_CASE("search output is deterministic across thread counts")
{
    auto p = problem(Domain::cube(2), V({"2", "2"}), "1/2", SearchMode::tilings);
    p.normalize = false;
    kernels::set_threads(1);
    auto a = search(p);
    kernels::set_threads(3);
    auto b = search(p);
    kernels::set_threads(kernels::max_threads());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].set.reps() == b[i].set.reps());
}
