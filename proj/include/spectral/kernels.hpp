#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace spectral
{
/*!
 * Regular sample grid over the half-open box [lo, hi): axis j gets the
 * points lo_j + (hi_j - lo_j) k / n_j for k = 0..n_j-1.
 */
struct GridSpec
{
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<std::size_t> n;

    static GridSpec unit_cell(std::size_t dim, std::size_t per_axis = 64);

    std::size_t dim() const { return n.size(); }
    std::size_t size() const;
    //! Coordinates of the flat (row-major) index
    void point(std::size_t flat, std::span<double> out) const;
};

namespace kernels
{
//---------------------------------------------------------------------------//
/*!
 * \f$D(x) = \sum_{\lambda} |\hat 1_U(x - \lambda)|^2\f$ at each grid point.
 *
 * The serial version is the reference: it calls \c power_spectrum per term
 * and is kept for testing. The parallel version flattens the domain and
 * splits grid points across OpenMP threads; each grid point is summed in
 * the same order in both, so results agree bit for bit.
 */
std::vector<double>
power_sum_serial(Domain const& u,
                 std::span<std::vector<double> const> points,
                 GridSpec const& grid);

std::vector<double>
power_sum_parallel(Domain const& u,
                   std::span<std::vector<double> const> points,
                   GridSpec const& grid);

//! Same sum at explicit sample locations (flattened, dim entries each)
std::vector<double>
power_sum_at(Domain const& u,
             std::span<std::vector<double> const> points,
             std::span<double const> samples);

//! |1_U^(xi)|^2 at each flattened frequency
std::vector<double> power_profile(Domain const& u,
                                  std::span<double const> frequencies);

//! Threads used by the parallel kernels (1 without OpenMP)
int max_threads();
void set_threads(int n);

}  // namespace kernels
}  // namespace spectral
