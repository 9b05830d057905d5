#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rational.hpp"

namespace spectral
{
//---------------------------------------------------------------------------//
/*!
 * Open axis-aligned box with rational corners.
 */
struct Box
{
    RVec lo;
    RVec hi;

    std::size_t dim() const { return lo.size(); }
    Rational measure() const;
    //! Strict interior membership
    bool contains(RVec const& p) const;
    bool contains(std::span<double const> p) const;
    Box translated(RVec const& t) const;
    RVec center() const;

    friend bool operator==(Box const&, Box const&) = default;
};

//! Throws DimensionMismatch or std::invalid_argument on a degenerate box
Box make_box(RVec lo, RVec hi);

//! Intersection of open boxes, if nonempty
std::optional<Box> intersect(Box const& a, Box const& b);

//---------------------------------------------------------------------------//
/*!
 * Finite union of pairwise-disjoint open boxes.
 *
 * A domain may additionally remember that it was built as a Cartesian
 * product of one-dimensional domains; the zero set of its Fourier transform
 * is then known exactly axis by axis.
 */
class Domain
{
  public:
    //! Validating constructor; see \c validate_domain
    static Domain from_boxes(std::vector<Box> boxes);
    //! Disjoint union of intervals in one dimension
    static Domain intervals(std::vector<std::pair<Rational, Rational>> iv);
    //! Cartesian product of one-dimensional domains
    static Domain product(std::vector<Domain> factors);
    //! The centered unit cube (-1/2, 1/2)^d
    static Domain cube(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::vector<Box> const& boxes() const { return boxes_; }
    Rational const& measure() const { return measure_; }

    //! Declared product factors, if any
    std::optional<std::vector<Domain>> const& product_factors() const
    {
        return factors_;
    }

    /*!
     * One-dimensional factors when the domain is known to be a product.
     *
     * Declared products return their factors; a single box is always the
     * product of its edges. Anything else returns nothing.
     */
    std::optional<std::vector<Domain>> factors() const;

    Domain translated(RVec const& t) const;
    Box bounding_box() const;
    //! Euclidean diameter of the bounding box (upper bound of the true one)
    double diameter() const;
    //! Largest common denominator of all corner coordinates
    std::int64_t common_denominator() const;

    bool contains(RVec const& p) const;
    bool contains(std::span<double const> p) const;

  private:
    Domain() = default;

    std::size_t dim_{0};
    std::vector<Box> boxes_;
    Rational measure_;
    std::optional<std::vector<Domain>> factors_;
};

/*!
 * Build a domain from boxes, checking uniform dimension and pairwise
 * disjointness exactly.
 *
 * Throws OverlapError with the first offending pair and the center of their
 * intersection, or DimensionMismatch.
 */
Domain validate_domain(std::vector<Box> boxes);

inline Rational measure(Domain const& u)
{
    return u.measure();
}

//---------------------------------------------------------------------------//
/*!
 * Union of (possibly overlapping) open boxes, as produced by U - V.
 */
struct DifferenceBody
{
    std::size_t dim{0};
    std::vector<Box> boxes;

    bool contains(RVec const& p) const;
    Box bounding_box() const;
};

//! Union over box pairs (a, b) of the open box (a.lo - b.hi, a.hi - b.lo)
DifferenceBody minkowski_difference(Domain const& u, Domain const& v);

inline bool contains(DifferenceBody const& b, RVec const& p)
{
    return b.contains(p);
}

//---------------------------------------------------------------------------//
/*!
 * Piecewise-constant covering level of U + (reps + diag(period) Z^d) on the
 * fundamental cell [0, period).
 */
struct LevelCell
{
    Box cell;
    int level{0};
};

struct Multiplicity
{
    RVec period;
    int target{1};
    int level_min{0};
    int level_max{0};
    std::vector<LevelCell> cells;
    std::vector<LevelCell> defect_cells;

    bool is_tiling() const
    {
        return level_min == target && level_max == target;
    }
    bool is_packing() const { return level_max <= 1; }

    //! Level at a point (reduced into the cell); boundary points resolve
    //! to the cell on their upper side
    int level_at(std::span<double const> x) const;

    //! Sum of level times cell measure over the fundamental cell
    Rational integrated_level() const;

    // Breakpoints per axis, used by level_at
    std::vector<std::vector<Rational>> breaks;
    std::vector<int> levels;  // flat, row-major over breaks
};

/*!
 * Exact multiplicity of the translates of \c u by a set with rectangular
 * period \c period and coset representatives \c reps.
 *
 * Throws UnboundedTranslateCount when more than \c max_translates box
 * translates would meet the fundamental cell.
 */
Multiplicity multiplicity(Domain const& u,
                          RVec const& period,
                          std::vector<RVec> const& reps,
                          int target = 1,
                          std::size_t max_translates = std::size_t(1) << 20);

}  // namespace spectral
