#include "spectral/kernels.hpp"

#include <stdexcept>

#include "spectral/errors.hpp"
#include "spectral/fourier.hpp"

#ifdef _OPENMP
#    include <omp.h>
#endif

namespace spectral
{
GridSpec GridSpec::unit_cell(std::size_t dim, std::size_t per_axis)
{
    return GridSpec{std::vector<double>(dim, 0.0),
                    std::vector<double>(dim, 1.0),
                    std::vector<std::size_t>(dim, per_axis)};
}

std::size_t GridSpec::size() const
{
    std::size_t s = 1;
    for (auto k : n)
        s *= k;
    return s;
}

void GridSpec::point(std::size_t flat, std::span<double> out) const
{
    for (std::size_t j = dim(); j-- > 0;)
    {
        std::size_t k = flat % n[j];
        flat /= n[j];
        out[j] = lo[j]
                 + (hi[j] - lo[j]) * static_cast<double>(k)
                       / static_cast<double>(n[j]);
    }
}

namespace kernels
{
namespace
{
// Box corners flattened as [box][axis] -> (lo, hi)
struct FlatDomain
{
    std::size_t dim;
    std::size_t boxes;
    std::vector<double> lo;
    std::vector<double> hi;

    explicit FlatDomain(Domain const& u)
        : dim{u.dim()}, boxes{u.boxes().size()}
    {
        for (auto const& b : u.boxes())
            for (std::size_t j = 0; j < dim; ++j)
            {
                lo.push_back(b.lo[j].to_double());
                hi.push_back(b.hi[j].to_double());
            }
    }

    double power(double const* xi) const
    {
        Complex s = 0;
        for (std::size_t b = 0; b < boxes; ++b)
        {
            Complex v = 1.0;
            for (std::size_t j = 0; j < dim; ++j)
                v *= ft_interval(lo[b * dim + j], hi[b * dim + j], xi[j]);
            s += v;
        }
        return std::norm(s);
    }
};

void check_dims(Domain const& u,
                std::span<std::vector<double> const> points,
                std::size_t dim)
{
    if (dim != u.dim())
        throw DimensionMismatch("grid and domain dimensions differ");
    for (auto const& p : points)
        if (p.size() != dim)
            throw DimensionMismatch("point dimension");
}
}  // namespace

std::vector<double>
power_sum_serial(Domain const& u,
                 std::span<std::vector<double> const> points,
                 GridSpec const& grid)
{
    check_dims(u, points, grid.dim());
    std::size_t const d = grid.dim();
    std::vector<double> out(grid.size(), 0.0);
    std::vector<double> x(d), diff(d);
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        grid.point(i, x);
        double sum = 0;
        for (auto const& p : points)
        {
            for (std::size_t j = 0; j < d; ++j)
                diff[j] = x[j] - p[j];
            sum += power_spectrum(u, diff);
        }
        out[i] = sum;
    }
    return out;
}

std::vector<double>
power_sum_parallel(Domain const& u,
                   std::span<std::vector<double> const> points,
                   GridSpec const& grid)
{
    check_dims(u, points, grid.dim());
    std::size_t const d = grid.dim();
    FlatDomain const flat(u);
    auto const n = static_cast<long long>(grid.size());
    std::vector<double> out(grid.size(), 0.0);

#pragma omp parallel
    {
        std::vector<double> x(d), diff(d);
#pragma omp for schedule(static)
        for (long long i = 0; i < n; ++i)
        {
            grid.point(static_cast<std::size_t>(i), x);
            double sum = 0;
            for (auto const& p : points)
            {
                for (std::size_t j = 0; j < d; ++j)
                    diff[j] = x[j] - p[j];
                sum += flat.power(diff.data());
            }
            out[static_cast<std::size_t>(i)] = sum;
        }
    }
    return out;
}

std::vector<double>
power_sum_at(Domain const& u,
             std::span<std::vector<double> const> points,
             std::span<double const> samples)
{
    std::size_t const d = u.dim();
    check_dims(u, points, d);
    if (samples.size() % d != 0)
        throw DimensionMismatch("sample buffer is not a multiple of dim");
    FlatDomain const flat(u);
    auto const n = static_cast<long long>(samples.size() / d);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);

#pragma omp parallel
    {
        std::vector<double> diff(d);
#pragma omp for schedule(static)
        for (long long i = 0; i < n; ++i)
        {
            double const* x = samples.data() + static_cast<std::size_t>(i) * d;
            double sum = 0;
            for (auto const& p : points)
            {
                for (std::size_t j = 0; j < d; ++j)
                    diff[j] = x[j] - p[j];
                sum += flat.power(diff.data());
            }
            out[static_cast<std::size_t>(i)] = sum;
        }
    }
    return out;
}

std::vector<double> power_profile(Domain const& u,
                                  std::span<double const> frequencies)
{
    std::size_t const d = u.dim();
    if (frequencies.size() % d != 0)
        throw DimensionMismatch("frequency buffer is not a multiple of dim");
    FlatDomain const flat(u);
    auto const n = static_cast<long long>(frequencies.size() / d);
    std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)]
            = flat.power(frequencies.data() + static_cast<std::size_t>(i) * d);
    return out;
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n)
{
    if (n < 1)
        throw std::invalid_argument("thread count must be positive");
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
}

}  // namespace kernels
}  // namespace spectral
