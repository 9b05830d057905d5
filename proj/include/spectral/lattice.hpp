#pragma once

#include <optional>
#include <vector>

#include "fourier.hpp"
#include "geometry.hpp"
#include "rational.hpp"

namespace spectral
{
//---------------------------------------------------------------------------//
/*!
 * Full-rank rational lattice M Z^d; the columns of M generate it.
 */
class Lattice
{
  public:
    explicit Lattice(RMatrix basis);

    static Lattice integer(std::size_t dim);
    static Lattice diagonal(RVec const& periods);

    std::size_t dim() const { return basis_.size(); }
    RMatrix const& basis() const { return basis_; }
    RMatrix const& inverse_basis() const { return inverse_; }
    //! Signed determinant of the basis
    Rational const& det() const { return det_; }
    //! Covolume |det|
    Rational covolume() const { return det_.abs(); }

    bool is_diagonal() const { return basis_.is_diagonal(); }
    //! |M_jj| for a diagonal basis
    RVec periods() const;

    bool contains(RVec const& v) const;
    //! Representative of v + L in the half-open cell M [0,1)^d
    RVec reduce(RVec const& v) const;

    friend bool operator==(Lattice const& a, Lattice const& b)
    {
        return a.basis_ == b.basis_;
    }

  private:
    RMatrix basis_;
    RMatrix inverse_;
    Rational det_;
};

//! Inverse-transpose basis
Lattice dual(Lattice const& l);

/*!
 * All points of offset + L strictly inside the box, in lexicographic order
 * of their lattice coordinates. Throws UnboundedTranslateCount past
 * \c max_points candidates.
 */
std::vector<RVec> lattice_points_in(Lattice const& l,
                                    RVec const& offset,
                                    Box const& box,
                                    std::size_t max_points = 1u << 22);

//---------------------------------------------------------------------------//
/*!
 * Periodic point set A + L with coset representatives A reduced into the
 * fundamental cell of L.
 */
class PeriodicSet
{
  public:
    PeriodicSet(Lattice lattice, std::vector<RVec> reps);

    std::size_t dim() const { return lattice_.dim(); }
    Lattice const& lattice() const { return lattice_; }
    //! Reduced modulo the lattice, sorted
    std::vector<RVec> const& reps() const { return reps_; }
    std::size_t size() const { return reps_.size(); }

    bool contains(RVec const& p) const;
    bool contains_zero() const { return contains(RVec(dim())); }

    //! Translation applied by \c with_origin (zero if none)
    RVec const& translation() const { return translation_; }

    PeriodicSet translated(RVec const& t) const;
    /*!
     * The same set moved so that 0 is a member (by minus the first
     * representative when needed); \c translation() records the move.
     */
    PeriodicSet with_origin() const;

  private:
    Lattice lattice_;
    std::vector<RVec> reps_;
    RVec translation_;
};

//! |A| / |det L|
Rational density(PeriodicSet const& s);

/*!
 * The same point set over a diagonal sublattice diag(t_1..t_d), where t_j
 * is the smallest positive rational with t_j e_j in L.
 */
PeriodicSet normalize_rectangular(PeriodicSet const& s);

//! Exact covering level of U + s on a rectangular fundamental cell
Multiplicity multiplicity(Domain const& u, PeriodicSet const& s,
                          int target = 1);

//---------------------------------------------------------------------------//
/*!
 * Atom of the Fourier transform of the periodic measure at a dual point:
 * the weight is \f$\sum_{a\in A} e^{-2\pi i\langle \xi, a\rangle}\f$.
 */
struct DualWeight
{
    RVec xi;
    Complex weight;
    //! Set when the cyclotomic test ran
    std::optional<bool> exact_zero;
    //! Common denominator of the phases <xi, a>
    std::int64_t order{1};
};

//! Largest phase denominator for which the exact test runs
inline constexpr std::int64_t max_exact_order = 1'000'000;

//! Throws NotDualPoint unless xi lies in the dual lattice
DualWeight weight(PeriodicSet const& s, RVec const& xi);

//! Nonzero dual lattice points strictly inside the body
std::vector<RVec> enumerate_dual_in(PeriodicSet const& s,
                                    DifferenceBody const& body);

//---------------------------------------------------------------------------//
/*!
 * Finite sample of a point set inside an open window box.
 *
 * Points may be arbitrary reals; when every point is rational the exact
 * coordinates are kept alongside.
 */
struct WindowSet
{
    std::size_t dim{0};
    std::vector<std::vector<double>> points;
    std::optional<std::vector<RVec>> exact;
    Box window;

    std::size_t size() const { return points.size(); }
};

WindowSet window(PeriodicSet const& s, Box const& w);

/*!
 * Column tiling of the plane by unit squares: column n holds the points
 * (n, m + shifts[n mod len]) for all integers m.
 */
WindowSet shifted_column_cubes(std::vector<Rational> const& shifts,
                               Box const& w);
WindowSet shifted_column_cubes(std::vector<double> const& shifts,
                               Box const& w);

//! The rational shifted-column set as a periodic set of period diag(len, 1)
PeriodicSet shifted_columns_periodic(std::vector<Rational> const& shifts);

struct DensityEstimate
{
    double estimate{0};
    double sup_bound{0};
};

/*!
 * Point counts per volume over half-open boxes of side 2R centered on a
 * grid of offsets inside the window. Throws RadiusTooLarge unless R is
 * below half the smallest window side.
 */
DensityEstimate density_estimate(WindowSet const& s, double radius);

/*!
 * Largest number of points in any half-open unit cube [y, y+1)^d; exact for
 * d <= 2 and a 2^d-cell upper bound otherwise.
 */
double unit_cube_count(WindowSet const& s);

}  // namespace spectral
