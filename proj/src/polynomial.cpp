#include "spectral/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <stdexcept>

namespace spectral
{
namespace
{
std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("polynomial coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("polynomial coefficient overflow");
    return r;
}

// Multiply by (x^d - 1) in place
void mul_binomial(std::vector<std::int64_t>& c, std::size_t d)
{
    std::vector<std::int64_t> r(c.size() + d, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
    {
        r[i + d] += c[i];
        r[i] -= c[i];
    }
    c = std::move(r);
}

// Exact division by (x^d - 1): q[i] = q[i+d] - c[i+d] read from the top
void div_binomial(std::vector<std::int64_t>& c, std::size_t d)
{
    std::size_t n = c.size() - 1;
    std::vector<std::int64_t> q(n - d + 1, 0);
    std::vector<std::int64_t> rem = c;
    for (std::size_t k = n + 1; k-- > d;)
    {
        std::int64_t lead = rem[k];
        if (lead == 0)
            continue;
        q[k - d] = lead;
        rem[k] = 0;
        rem[k - d] += lead;
    }
    c = std::move(q);
}

int moebius(std::int64_t n)
{
    int mu = 1;
    for (std::int64_t p = 2; p * p <= n; ++p)
    {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        mu = -mu;
    }
    if (n > 1)
        mu = -mu;
    return mu;
}
}  // namespace

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs))
{
    trim();
}

IntPoly IntPoly::from_exponents(std::vector<std::int64_t> const& exps)
{
    std::int64_t top = 0;
    for (auto e : exps)
    {
        if (e < 0)
            throw std::invalid_argument("negative exponent");
        top = std::max(top, e);
    }
    std::vector<std::int64_t> c(static_cast<std::size_t>(top) + 1, 0);
    for (auto e : exps)
        ++c[static_cast<std::size_t>(e)];
    return IntPoly(std::move(c));
}

void IntPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

std::complex<double> IntPoly::eval(std::complex<double> z) const
{
    std::complex<double> r = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        r = r * z + static_cast<double>(c_[i]);
    return r;
}

std::complex<double> IntPoly::derivative_at(std::complex<double> z) const
{
    std::complex<double> r = 0;
    for (std::size_t i = c_.size(); i-- > 1;)
        r = r * z + static_cast<double>(c_[i]) * static_cast<double>(i);
    return r;
}

int IntPoly::strip_x_powers()
{
    auto first = std::find_if(c_.begin(), c_.end(), [](auto v) {
        return v != 0;
    });
    int k = static_cast<int>(first - c_.begin());
    c_.erase(c_.begin(), first);
    return k;
}

IntPoly IntPoly::remainder(IntPoly const& monic) const
{
    if (monic.is_zero() || monic.c_.back() != 1)
        throw std::invalid_argument("remainder needs a monic divisor");
    std::vector<std::int64_t> r = c_;
    std::size_t const m = monic.c_.size() - 1;
    // Sparse view of the divisor below its leading term
    std::vector<std::pair<std::size_t, std::int64_t>> terms;
    for (std::size_t i = 0; i < m; ++i)
        if (monic.c_[i] != 0)
            terms.emplace_back(i, monic.c_[i]);

    for (std::size_t k = r.size(); k-- > m;)
    {
        std::int64_t lead = r[k];
        if (lead == 0)
            continue;
        r[k] = 0;
        std::size_t shift = k - m;
        for (auto const& [i, v] : terms)
            r[shift + i] = checked_sub(r[shift + i], checked_mul(lead, v));
    }
    return IntPoly(std::move(r));
}

bool IntPoly::divide_exact(IntPoly const& monic)
{
    if (monic.is_zero() || monic.c_.back() != 1)
        throw std::invalid_argument("divide_exact needs a monic divisor");
    std::size_t const m = monic.c_.size() - 1;
    if (c_.size() <= m)
        return is_zero();
    std::vector<std::int64_t> r = c_;
    std::vector<std::int64_t> q(c_.size() - m, 0);
    for (std::size_t k = r.size(); k-- > m;)
    {
        std::int64_t lead = r[k];
        if (lead == 0)
            continue;
        q[k - m] = lead;
        std::size_t shift = k - m;
        for (std::size_t i = 0; i <= m; ++i)
            if (monic.c_[i] != 0)
                r[shift + i]
                    = checked_sub(r[shift + i], checked_mul(lead, monic.c_[i]));
    }
    if (std::any_of(r.begin(), r.end(), [](auto v) { return v != 0; }))
        return false;
    c_ = std::move(q);
    trim();
    return true;
}

std::int64_t euler_phi(std::int64_t n)
{
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p)
    {
        if (n % p)
            continue;
        while (n % p == 0)
            n /= p;
        result -= result / p;
    }
    if (n > 1)
        result -= result / n;
    return result;
}

IntPoly cyclotomic(std::int64_t n)
{
    if (n <= 0)
        throw std::invalid_argument("cyclotomic index must be positive");
    // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}; multiply all numerators
    // before dividing so every intermediate is a polynomial.
    std::vector<std::int64_t> divisors;
    for (std::int64_t d = 1; d * d <= n; ++d)
        if (n % d == 0)
        {
            divisors.push_back(d);
            if (d * d != n)
                divisors.push_back(n / d);
        }
    std::vector<std::int64_t> c{1};
    for (auto d : divisors)
        if (moebius(n / d) == 1)
            mul_binomial(c, static_cast<std::size_t>(d));
    for (auto d : divisors)
        if (moebius(n / d) == -1)
            div_binomial(c, static_cast<std::size_t>(d));
    // mu(n/n) = 1 puts (x^n - 1) in the numerator, so the sign is fixed up
    // by requiring a monic result.
    IntPoly p(std::move(c));
    if (!p.is_zero() && p.coeffs().back() < 0)
    {
        std::vector<std::int64_t> neg = p.coeffs();
        for (auto& v : neg)
            v = -v;
        p = IntPoly(std::move(neg));
    }
    return p;
}

bool divisible_by_cyclotomic(IntPoly const& p, std::int64_t n)
{
    if (p.is_zero())
        return true;
    return p.remainder(cyclotomic(n)).is_zero();
}

bool root_of_unity_sum_vanishes(std::vector<std::int64_t> const& exponents,
                                std::int64_t q)
{
    if (q <= 0)
        throw std::invalid_argument("root order must be positive");
    std::vector<std::int64_t> reduced;
    reduced.reserve(exponents.size());
    for (auto e : exponents)
        reduced.push_back(((e % q) + q) % q);
    return divisible_by_cyclotomic(IntPoly::from_exponents(reduced), q);
}

std::vector<std::complex<double>> polynomial_roots(IntPoly const& p)
{
    int const n = p.degree();
    if (n < 1)
        return {};
    auto const& c = p.coeffs();
    double const lead = static_cast<double>(c.back());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        companion(i, n - 1) = -static_cast<double>(c[i]) / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("companion eigenvalue solver failed");

    std::vector<std::complex<double>> roots;
    roots.reserve(n);
    for (int i = 0; i < n; ++i)
    {
        std::complex<double> z = solver.eigenvalues()[i];
        for (int it = 0; it < 8; ++it)
        {
            auto dp = p.derivative_at(z);
            if (std::abs(dp) < 1e-300)
                break;
            auto step = p.eval(z) / dp;
            z -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z)))
                break;
        }
        roots.push_back(z);
    }
    return roots;
}

}  // namespace spectral
