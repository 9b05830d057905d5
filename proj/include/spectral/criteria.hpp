#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fourier.hpp"
#include "geometry.hpp"
#include "kernels.hpp"
#include "lattice.hpp"

namespace spectral
{
enum class Status
{
    holds,
    fails,
    inconclusive
};

char const* to_string(Status s);

struct Margin
{
    std::string name;
    double value{0};
    //! Value sits within the tolerance band of a decision boundary
    bool near{false};
};

//! A point known exactly when rational, always approximately
struct PointValue
{
    std::vector<double> approx;
    std::optional<RVec> exact;

    static PointValue of(RVec const& v);
    static PointValue of(std::vector<double> v);
};

//---------------------------------------------------------------------------//
// Witnesses
//---------------------------------------------------------------------------//

//! lambda - mu lies outside Z(1_U^)
struct DifferenceWitness
{
    PointValue lambda;
    PointValue mu;
    PointValue difference;
    double abs_ft{0};
};

//! Dual lattice point with nonvanishing weight
struct DualWitness
{
    DualWeight dual;
};

struct DensityWitness
{
    Rational density;
    Rational required;
};

//! Cell of the fundamental domain covered at the wrong level
struct CellWitness
{
    LevelCell cell;
    int target{1};
};

//! Grid sample of the windowed sum
struct SampleWitness
{
    std::vector<double> x;
    double value{0};
    double defect{0};
};

//! Zero of 1_Omega^ inside the body D - D
struct RootWitness
{
    std::size_t box{0};
    std::size_t axis{0};
    PointValue root;
    //! Error radius of the root location (0 for exact roots)
    double error_bound{0};
};

struct MeasureWitness
{
    std::string which;
    Rational measure;
    Rational required;
};

struct DisagreementWitness
{
    std::string first_check;
    Status first{Status::holds};
    std::string second_check;
    Status second{Status::holds};
};

//! Solutions present in one list but not the other
struct SetDifferenceWitness
{
    std::vector<std::vector<RVec>> only_first;
    std::vector<std::vector<RVec>> only_second;
};

using Witness = std::variant<DifferenceWitness,
                             DualWitness,
                             DensityWitness,
                             CellWitness,
                             SampleWitness,
                             RootWitness,
                             MeasureWitness,
                             DisagreementWitness,
                             SetDifferenceWitness>;

char const* witness_kind(Witness const& w);

/*!
 * Outcome of a check. A failure always carries a witness; an inconclusive
 * result always records at least one near margin.
 */
struct Verdict
{
    Status status{Status::inconclusive};
    std::optional<Witness> witness;
    std::vector<Margin> margins;
    std::vector<std::string> notes;

    bool holds() const { return status == Status::holds; }
    bool fails() const { return status == Status::fails; }

    static Verdict make_holds();
    static Verdict make_fails(Witness w);
    static Verdict make_inconclusive(Margin near_margin);
};

struct SpectrumCertificate
{
    Rational density;
    std::vector<DualWeight> dual_points;
    //! Every weight was decided by the cyclotomic test
    bool all_exact{true};
};

//---------------------------------------------------------------------------//
// Coset analysis
//---------------------------------------------------------------------------//

/*!
 * A nonzero point of delta + diag(periods) Z^d outside the product zero
 * set described by \c axes, if one exists.
 *
 * Each axis is split into residue classes modulo lcm(period, root period);
 * the search is linear in the number of classes per axis.
 */
std::optional<RVec> find_coset_escape(std::vector<AxisRoots> const& axes,
                                      RVec const& delta,
                                      RVec const& periods);

//---------------------------------------------------------------------------//
// Checks
//---------------------------------------------------------------------------//

//! Lambda - Lambda is inside Z(1_Omega^) union {0}
Verdict check_orthogonality(Domain const& omega,
                            PeriodicSet const& lambda,
                            double tol);
Verdict check_orthogonality(Domain const& omega,
                            WindowSet const& lambda,
                            double tol);

/*!
 * Exact spectrum test for a periodic set: density 1 and every nonzero dual
 * point inside Omega - Omega has vanishing weight. Throws MeasureNotOne.
 */
std::pair<Verdict, SpectrumCertificate>
check_spectrum_periodic(Domain const& omega,
                        PeriodicSet const& lambda,
                        double tol);

//! Omega + Lambda is a tiling at level 1
Verdict check_set_tiling(Domain const& omega, PeriodicSet const& lambda);

struct DefectOptions
{
    //! Defaults to the unit cell with 64 points per axis
    std::optional<GridSpec> grid;
    //! Points per unit cube; computed from the window when unset
    std::optional<double> rho;
    double tol{1e-9};
    //! Use the serial reference kernel
    bool serial{false};
};

/*!
 * Windowed sum D(x) = sum |1_Omega^(x - lambda)|^2 on a grid. Packing holds
 * when max D <= 1 + tail + tol, tiling when max |D - 1| <= tail + tol. A
 * pass with a non-rigorous tail bound is inconclusive. Throws
 * RadiusTooSmall unless the grid sits at least diam(Omega) inside the
 * window.
 */
Verdict check_packing_defect(Domain const& omega,
                             WindowSet const& lambda,
                             DefectOptions const& opts = {});
Verdict check_tiling_defect(Domain const& omega,
                            WindowSet const& lambda,
                            DefectOptions const& opts = {});

//! (D - D) does not meet Z(1_Omega^)
Verdict check_opr(Domain const& omega, Domain const& d, double tol);

//! Both measures 1 and OPR in both directions
Verdict check_tight_pair(Domain const& omega, Domain const& d, double tol);

/*!
 * For a tight pair and a tiling Omega + Lambda: Lambda - Lambda misses
 * Z(1_D^) except at 0. Throws PreconditionFailed when the pair is not tight
 * or the set does not tile.
 */
Verdict check_keller(Domain const& omega,
                     PeriodicSet const& lambda,
                     Domain const& d,
                     double tol);

struct TileSpec
{
    enum class Kind
    {
        indicator,
        power_spectrum
    };
    Kind kind{Kind::indicator};
    Domain domain;
};

/*!
 * Given f, g of integral 1 that both pack with Lambda, f tiles with
 * Lambda exactly when g does. Throws IntegralMismatch or
 * PreconditionFailed.
 */
Verdict transfer_harness(TileSpec const& f,
                         TileSpec const& g,
                         PeriodicSet const& lambda,
                         double tol);

/*!
 * For a tiling Omega + Lambda with |Omega| = 1 and OPR(Omega, D): |D| <= 1.
 */
Verdict check_opr_measure_bound(Domain const& omega,
                                PeriodicSet const& lambda,
                                Domain const& d,
                                double tol);

//! For a tight pair: Lambda is a spectrum of Omega iff D + Lambda tiles
Verdict duality_roundtrip(Domain const& omega,
                          Domain const& d,
                          PeriodicSet const& lambda,
                          double tol);

}  // namespace spectral
