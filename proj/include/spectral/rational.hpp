#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spectral
{
//---------------------------------------------------------------------------//
/*!
 * Exact rational number with 64-bit numerator and denominator.
 *
 * Values are always kept in canonical form: the denominator is positive and
 * coprime to the numerator. Intermediate products are formed in 128-bit
 * arithmetic and an \c std::overflow_error is thrown if the reduced result
 * does not fit in 64 bits.
 */
class Rational
{
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_{n} {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const
    {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    //! Largest integer not above the value
    std::int64_t floor() const;
    //! Smallest integer not below the value
    std::int64_t ceil() const;

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational operator-() const;

    Rational& operator+=(Rational const& o);
    Rational& operator-=(Rational const& o);
    Rational& operator*=(Rational const& o);
    Rational& operator/=(Rational const& o);

    friend Rational operator+(Rational a, Rational const& b) { return a += b; }
    friend Rational operator-(Rational a, Rational const& b) { return a -= b; }
    friend Rational operator*(Rational a, Rational const& b) { return a *= b; }
    friend Rational operator/(Rational a, Rational const& b) { return a /= b; }

    friend bool operator==(Rational const& a, Rational const& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering
    operator<=>(Rational const& a, Rational const& b);

    //! "p/q" or "p" when integral
    std::string str() const;

    /*!
     * Parse "p/q", an integer, or a finite decimal such as "-0.25" or "1e-3".
     *
     * Throws \c std::invalid_argument for anything else.
     */
    static Rational parse(std::string_view text);

  private:
    static Rational from_wide(__int128 n, __int128 d);

    std::int64_t num_{0};
    std::int64_t den_{1};
};

std::ostream& operator<<(std::ostream& os, Rational const& r);

//! Floored modulus: result in [0, m) for m > 0
Rational mod(Rational const& x, Rational const& m);

//! Least common multiple of positive integers, with overflow check
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

//! Smallest positive rational that is an integer multiple of both a and b
Rational lcm(Rational const& a, Rational const& b);

using RVec = std::vector<Rational>;

std::vector<double> to_doubles(RVec const& v);
std::string str(RVec const& v);

RVec operator+(RVec const& a, RVec const& b);
RVec operator-(RVec const& a, RVec const& b);
RVec operator-(RVec const& a);

//! Exact inner product
Rational dot(RVec const& a, RVec const& b);

//---------------------------------------------------------------------------//
/*!
 * Dense square matrix over the rationals, row-major.
 */
class RMatrix
{
  public:
    RMatrix() = default;
    explicit RMatrix(std::size_t n) : n_{n}, data_(n * n) {}

    static RMatrix identity(std::size_t n);
    static RMatrix diagonal(RVec const& diag);
    //! Matrix whose columns are the given vectors
    static RMatrix from_columns(std::vector<RVec> const& cols);

    std::size_t size() const { return n_; }

    Rational& operator()(std::size_t i, std::size_t j)
    {
        return data_[i * n_ + j];
    }
    Rational const& operator()(std::size_t i, std::size_t j) const
    {
        return data_[i * n_ + j];
    }

    RVec column(std::size_t j) const;
    bool is_diagonal() const;

    Rational determinant() const;
    //! Exact inverse; throws \c std::domain_error when singular
    RMatrix inverse() const;
    RMatrix transpose() const;

    RVec operator*(RVec const& v) const;
    friend RMatrix operator*(RMatrix const& a, RMatrix const& b);
    friend bool operator==(RMatrix const& a, RMatrix const& b) = default;

  private:
    std::size_t n_{0};
    std::vector<Rational> data_;
};

}  // namespace spectral

template<>
struct std::hash<spectral::Rational>
{
    std::size_t operator()(spectral::Rational const& r) const noexcept
    {
        return std::hash<std::int64_t>{}(r.num()) * 31u
               ^ std::hash<std::int64_t>{}(r.den());
    }
};
