#pragma once

#include <optional>
#include <vector>

#include "criteria.hpp"
#include "geometry.hpp"
#include "lattice.hpp"

namespace spectral
{
enum class SearchMode
{
    spectra,
    tilings
};

/*!
 * Search for periodic sets A + diag(period) Z^d with A on the grid
 * grid_step Z^d inside [0, period).
 *
 * The number of representatives is fixed to k = det(period) / |domain|.
 * An explicit candidate list replaces the grid when given.
 */
struct SearchProblem
{
    Domain domain;
    RVec period;
    Rational grid_step{1};
    SearchMode mode{SearchMode::spectra};
    //! Only sets containing 0
    bool normalize{true};
    std::optional<std::vector<RVec>> candidates;

    //! Required representative count; throws std::invalid_argument unless
    //! it is a positive integer
    std::int64_t target_count() const;
    //! Grid points of the fundamental cell (or the explicit candidates)
    std::vector<RVec> vertices() const;
};

struct CompatibilityGraph
{
    std::vector<RVec> vertices;
    //! Symmetric adjacency, no loops
    std::vector<std::vector<bool>> adjacent;
    //! Whether a single coset is admissible on its own
    bool self_compatible{true};

    std::size_t edge_count() const;
};

/*!
 * Spectra mode joins u and v when the whole coset (u - v) + L minus 0 lies
 * in Z(1_U^); tilings mode when U + u and U + v are disjoint modulo the
 * period. Throws UnstructuredZeroSet in spectra mode without an exact zero
 * set.
 */
CompatibilityGraph compatibility_graph(SearchProblem const& p);

struct SearchSolution
{
    PeriodicSet set;
    Verdict verdict;
    std::optional<SpectrumCertificate> certificate;
};

//! All verified solutions, canonical order (reps sorted, then lexicographic)
std::vector<SearchSolution> search(SearchProblem const& p);
std::vector<SearchSolution> search_spectra(SearchProblem p);
std::vector<SearchSolution> search_tilings(SearchProblem p);

/*!
 * Spectra of omega against tilings of D over the same period and grid.
 * Throws PreconditionFailed unless (omega, D) is a tight pair.
 */
Verdict duality_scan(Domain const& omega,
                     Domain const& d,
                     SearchProblem const& p,
                     double tol);

}  // namespace spectral
