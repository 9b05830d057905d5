#pragma once

#include <random>
#include <string>
#include <vector>

#include "spectral/geometry.hpp"
#include "spectral/lattice.hpp"
#include "spectral/rational.hpp"

namespace spectral::test
{
inline Rational R(char const* s)
{
    return Rational::parse(s);
}

inline RVec V(std::initializer_list<char const*> xs)
{
    RVec v;
    for (auto const* x : xs)
        v.push_back(Rational::parse(x));
    return v;
}

inline Domain two_interval()
{
    return Domain::intervals({{R("0"), R("1/2")}, {R("1"), R("3/2")}});
}

inline PeriodicSet periodic_1d(char const* period,
                               std::initializer_list<char const*> reps)
{
    std::vector<RVec> a;
    for (auto const* r : reps)
        a.push_back({R(r)});
    return PeriodicSet(Lattice::diagonal({R(period)}), a);
}

inline PeriodicSet integer_lattice(std::size_t d)
{
    return PeriodicSet(Lattice::integer(d), {RVec(d)});
}

//! Random disjoint union of 1-3 intervals with endpoints in (1/q)Z
inline Domain random_union(std::mt19937_64& rng, int q, int max_boxes = 3)
{
    std::uniform_int_distribution<int> nb(1, max_boxes);
    std::uniform_int_distribution<int> step(1, 2 * q);
    std::vector<std::pair<Rational, Rational>> iv;
    std::int64_t pos = std::uniform_int_distribution<int>(-q, q)(rng);
    int n = nb(rng);
    for (int i = 0; i < n; ++i)
    {
        std::int64_t lo = pos + (i ? step(rng) : 0);
        std::int64_t hi = lo + step(rng);
        iv.emplace_back(Rational(lo, q), Rational(hi, q));
        pos = hi;
    }
    return Domain::intervals(iv);
}

}  // namespace spectral::test
