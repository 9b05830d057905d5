#include "spectral/search.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <set>
#include <stdexcept>

#include "spectral/errors.hpp"

namespace spectral
{
std::int64_t SearchProblem::target_count() const
{
    if (period.size() != domain.dim())
        throw DimensionMismatch("period and domain dimensions differ");
    Rational det{1};
    for (auto const& c : period)
    {
        if (c.sign() <= 0)
            throw std::invalid_argument("period entries must be positive");
        det *= c;
    }
    Rational const k = det / domain.measure();
    if (!k.is_integer() || k.num() < 1)
        throw std::invalid_argument("det(period) / |domain| = " + k.str()
                                    + " is not a positive integer");
    return k.num();
}

std::vector<RVec> SearchProblem::vertices() const
{
    std::size_t const d = domain.dim();
    std::vector<RVec> out;
    if (candidates)
    {
        auto lat = Lattice::diagonal(period);
        std::set<RVec> seen;
        for (auto const& c : *candidates)
        {
            if (c.size() != d)
                throw DimensionMismatch("candidate dimension");
            seen.insert(lat.reduce(c));
        }
        out.assign(seen.begin(), seen.end());
        return out;
    }
    if (grid_step.sign() <= 0)
        throw std::invalid_argument("grid step must be positive");
    std::vector<std::int64_t> counts(d);
    for (std::size_t j = 0; j < d; ++j)
    {
        Rational n = period[j] / grid_step;
        if (!n.is_integer())
            throw std::invalid_argument("grid step " + grid_step.str()
                                        + " does not divide period "
                                        + period[j].str());
        counts[j] = n.num();
    }
    std::vector<std::int64_t> idx(d, 0);
    while (true)
    {
        RVec p(d);
        for (std::size_t j = 0; j < d; ++j)
            p[j] = grid_step * Rational(idx[j]);
        out.push_back(std::move(p));
        std::size_t j = d;
        while (j > 0)
        {
            --j;
            if (++idx[j] < counts[j])
                break;
            idx[j] = 0;
            if (j == 0)
                return out;
        }
    }
}

std::size_t CompatibilityGraph::edge_count() const
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < adjacent.size(); ++i)
        for (std::size_t j = i + 1; j < adjacent.size(); ++j)
            n += adjacent[i][j];
    return n;
}

//---------------------------------------------------------------------------//
namespace
{
// (delta + L) meets the open body, excluding 0 when delta is in L
bool coset_meets_body(Lattice const& lat,
                      RVec const& delta,
                      DifferenceBody const& body)
{
    Box bb = body.bounding_box();
    for (auto const& p : lattice_points_in(lat, delta, bb))
    {
        if (std::all_of(p.begin(), p.end(),
                        [](Rational const& x) { return x.is_zero(); }))
            continue;
        if (body.contains(p))
            return true;
    }
    return false;
}
}  // namespace

CompatibilityGraph compatibility_graph(SearchProblem const& p)
{
    CompatibilityGraph g;
    g.vertices = p.vertices();
    std::size_t const n = g.vertices.size();
    g.adjacent.assign(n, std::vector<bool>(n, false));
    RVec const zero(p.domain.dim());

    std::function<bool(RVec const&)> compatible;
    std::vector<AxisRoots> axes;
    auto const lat = Lattice::diagonal(p.period);
    DifferenceBody body;
    if (p.mode == SearchMode::spectra)
    {
        auto z = zero_set(p.domain);
        if (!z.structured())
            throw UnstructuredZeroSet("spectra search needs an exact zero set");
        axes = z.axes();
        compatible = [&](RVec const& delta) {
            return !find_coset_escape(axes, delta, p.period);
        };
    }
    else
    {
        body = minkowski_difference(p.domain, p.domain);
        compatible = [&](RVec const& delta) {
            return !coset_meets_body(lat, delta, body);
        };
    }

    g.self_compatible = compatible(zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
        {
            bool e = compatible(g.vertices[i] - g.vertices[j]);
            g.adjacent[i][j] = g.adjacent[j][i] = e;
        }
    return g;
}

//---------------------------------------------------------------------------//
namespace
{
void extend(CompatibilityGraph const& g,
            std::size_t k,
            std::vector<std::size_t>& clique,
            std::vector<std::size_t> const& pool,
            std::vector<std::vector<std::size_t>>& out)
{
    if (clique.size() == k)
    {
        out.push_back(clique);
        return;
    }
    if (clique.size() + pool.size() < k)
        return;
    for (std::size_t a = 0; a < pool.size(); ++a)
    {
        std::size_t const v = pool[a];
        std::vector<std::size_t> next;
        for (std::size_t b = a + 1; b < pool.size(); ++b)
            if (g.adjacent[v][pool[b]])
                next.push_back(pool[b]);
        clique.push_back(v);
        extend(g, k, clique, next, out);
        clique.pop_back();
    }
}

bool is_zero(RVec const& v)
{
    return std::all_of(
        v.begin(), v.end(), [](Rational const& x) { return x.is_zero(); });
}
}  // namespace

std::vector<SearchSolution> search(SearchProblem const& p)
{
    std::size_t const k = static_cast<std::size_t>(p.target_count());
    if (p.mode == SearchMode::spectra && p.domain.measure() != Rational(1))
        throw MeasureNotOne("spectra search needs a domain of measure 1");

    auto const g = compatibility_graph(p);
    std::size_t const n = g.vertices.size();
    if (!g.self_compatible || n == 0)
        return {};

    // Prefixes of length one; with normalize only the origin
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i)
        if (!p.normalize || is_zero(g.vertices[i]))
            roots.push_back(i);

    std::vector<std::vector<SearchSolution>> found(roots.size());
    auto const lat = Lattice::diagonal(p.period);
    auto const nroots = static_cast<long long>(roots.size());

    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (long long r = 0; r < nroots; ++r)
    try
    {
        std::size_t const root = roots[static_cast<std::size_t>(r)];
        // With normalize the origin is the only root, so earlier vertices
        // may join as well
        std::vector<std::size_t> pool;
        for (std::size_t j = p.normalize ? 0 : root + 1; j < n; ++j)
            if (j != root && g.adjacent[root][j])
                pool.push_back(j);
        std::vector<std::size_t> clique{root};
        std::vector<std::vector<std::size_t>> cliques;
        extend(g, k, clique, pool, cliques);

        auto& local = found[static_cast<std::size_t>(r)];
        for (auto const& c : cliques)
        {
            std::vector<RVec> reps;
            for (auto i : c)
                reps.push_back(g.vertices[i]);
            std::sort(reps.begin(), reps.end());
            PeriodicSet set(lat, reps);
            if (p.mode == SearchMode::spectra)
            {
                auto [v, cert] = check_spectrum_periodic(p.domain, set, 1e-9);
                if (v.holds())
                    local.push_back({std::move(set), std::move(v),
                                     std::move(cert)});
            }
            else
            {
                auto v = check_set_tiling(p.domain, set);
                if (v.holds())
                    local.push_back({std::move(set), std::move(v),
                                     std::nullopt});
            }
        }
    }
    catch (...)
    {
#pragma omp critical
        if (!error)
            error = std::current_exception();
    }
    if (error)
        std::rethrow_exception(error);

    std::vector<SearchSolution> out;
    for (auto& f : found)
        for (auto& s : f)
            out.push_back(std::move(s));
    std::sort(out.begin(), out.end(),
              [](SearchSolution const& a, SearchSolution const& b) {
                  return a.set.reps() < b.set.reps();
              });
    return out;
}

std::vector<SearchSolution> search_spectra(SearchProblem p)
{
    p.mode = SearchMode::spectra;
    return search(p);
}

std::vector<SearchSolution> search_tilings(SearchProblem p)
{
    p.mode = SearchMode::tilings;
    return search(p);
}

Verdict duality_scan(Domain const& omega,
                     Domain const& d,
                     SearchProblem const& p,
                     double tol)
{
    if (!check_tight_pair(omega, d, tol).holds())
        throw PreconditionFailed("(omega, D) is not a tight pair");

    SearchProblem ps = p;
    ps.domain = omega;
    SearchProblem pt = p;
    pt.domain = d;
    auto const spectra = search_spectra(ps);
    auto const tilings = search_tilings(pt);

    std::set<std::vector<RVec>> a, b;
    for (auto const& s : spectra)
        a.insert(s.set.reps());
    for (auto const& s : tilings)
        b.insert(s.set.reps());

    SetDifferenceWitness w;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(w.only_first));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                        std::back_inserter(w.only_second));

    Verdict v = (w.only_first.empty() && w.only_second.empty())
                    ? Verdict::make_holds()
                    : Verdict::make_fails(std::move(w));
    v.margins.push_back({"spectra", static_cast<double>(a.size()), false});
    v.margins.push_back({"tilings", static_cast<double>(b.size()), false});
    return v;
}

}  // namespace spectral
