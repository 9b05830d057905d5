#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "geometry.hpp"
#include "rational.hpp"

namespace spectral
{
using Complex = std::complex<double>;

/*!
 * Fourier transform of the indicator of a box union,
 * \f$\hat{1}_U(\xi) = \int_U e^{-2\pi i \langle \xi, t\rangle} dt\f$.
 *
 * Each box contributes a product of per-axis factors
 * \f$e^{-\pi i (lo+hi)\xi} \, w \, \mathrm{sinc}(\pi w \xi)\f$, which equals
 * \f$(e^{-2\pi i\, lo\, \xi} - e^{-2\pi i\, hi\, \xi}) / (2\pi i \xi)\f$ and
 * stays accurate as \f$\xi \to 0\f$.
 */
Complex ft_indicator(Domain const& u, std::span<double const> xi);
Complex ft_indicator(Domain const& u, RVec const& xi);

//! Squared modulus of \c ft_indicator
double power_spectrum(Domain const& u, std::span<double const> xi);

//! One interval factor, used by the kernels
Complex ft_interval(double lo, double hi, double xi);

//---------------------------------------------------------------------------//
// Zero sets
//---------------------------------------------------------------------------//

struct IrrationalPhase
{
    double approx{0};
    double error_bound{0};
};

/*!
 * One-dimensional real root set (phases + period Z) minus {0}.
 *
 * Rational phases are exact and reduced into [0, period). Irrational
 * phases come from unit-circle roots that are not roots of unity; each
 * true root lies within \c error_bound of its approximation.
 */
struct AxisRoots
{
    Rational period{1};
    std::vector<Rational> rational_phases;
    std::vector<IrrationalPhase> irrational_phases;

    //! Exact membership for rational input
    bool contains(Rational const& xi) const;
    //! All roots in [-range, range], ascending
    std::vector<double> list(double range) const;
};

struct ProductHyperplanes
{
    std::vector<AxisRoots> axes;
};

struct Roots1D
{
    AxisRoots axis;
};

struct NumericOnly
{
    double tol{1e-9};
};

/*!
 * Structured description of Z(1_U^): a union of per-axis hyperplane
 * families for products, a root list in one dimension, or nothing but the
 * domain itself for numeric membership tests.
 */
struct ZeroSet
{
    Domain domain;
    std::variant<ProductHyperplanes, Roots1D, NumericOnly> form;

    bool structured() const
    {
        return !std::holds_alternative<NumericOnly>(form);
    }
    //! Per-axis roots; empty for NumericOnly
    std::vector<AxisRoots> axes() const;
};

ZeroSet zero_set(Domain const& u);

/*!
 * Exact root structure of a one-dimensional box union.
 *
 * With q the common denominator of the endpoints and z = exp(-2 pi i xi/q),
 * \f$2\pi i \xi \hat 1_I(\xi) = \sum_k (z^{q\,lo_k} - z^{q\,hi_k})\f$ is a
 * polynomial with coefficients in {-1, 0, 1}. Roots of unity are found by
 * cyclotomic divisibility; the remaining unit-circle roots come from
 * companion eigenvalues filtered by ||z| - 1| < 1e-8.
 */
AxisRoots roots_1d(Domain const& interval_union);

enum class Membership
{
    yes,
    no,
    near
};

char const* to_string(Membership m);

//! Exact for structured zero sets; numeric otherwise
Membership in_zero_set(ZeroSet const& z, RVec const& xi, double tol);

/*!
 * Numeric membership: |1_U^| (per axis for products) below tol is yes,
 * within 10 tol is near, otherwise no.
 */
Membership
in_zero_set(ZeroSet const& z, std::span<double const> xi, double tol);

//! Default zero tolerance, 1e-9 max(1, |U|)
double default_zero_tol(Domain const& u);

//---------------------------------------------------------------------------//
// Tail bounds
//---------------------------------------------------------------------------//

struct TailBound
{
    double radius{0};
    double bound{0};
    bool rigorous{false};
};

/*!
 * Upper bound on \f$\sup_x \sum_{\lambda \notin W} |\hat 1_U(x-\lambda)|^2\f$
 * for x within \c extent (sup norm) of the window interior and every
 * lambda at sup distance at least \c radius - \c extent from x.
 *
 * \c rho bounds the number of points of the set in any half-open unit
 * cube. For products the per-axis estimate
 * \f$|\hat 1_F(t)| \le \min(|F|, c/(\pi |t|))\f$ (c = interval count) is
 * summed over unit cubes, which makes the result rigorous. Other domains
 * get the same formula applied to their bounding box, flagged
 * non-rigorous.
 */
TailBound tail_bound(Domain const& u, double rho, double radius,
                     double extent = 1.0);

}  // namespace spectral
