#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace spectral
{
/*!
 * Dense integer polynomial; coefficient i multiplies x^i.
 *
 * Trailing zeros are stripped so that \c degree() is meaningful; the zero
 * polynomial has no coefficients and degree -1.
 */
class IntPoly
{
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<std::int64_t> coeffs);

    //! Sum of monomials x^e (repeats add up)
    static IntPoly from_exponents(std::vector<std::int64_t> const& exps);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::vector<std::int64_t> const& coeffs() const { return c_; }
    std::int64_t operator[](std::size_t i) const
    {
        return i < c_.size() ? c_[i] : 0;
    }

    std::complex<double> eval(std::complex<double> z) const;
    std::complex<double> derivative_at(std::complex<double> z) const;

    //! Remove factors of x; returns how many were removed
    int strip_x_powers();

    /*!
     * Divide exactly by a monic divisor.
     *
     * Returns false (and leaves *this untouched) if the remainder is nonzero.
     */
    bool divide_exact(IntPoly const& monic);

    //! Remainder modulo a monic polynomial
    IntPoly remainder(IntPoly const& monic) const;

    friend bool operator==(IntPoly const&, IntPoly const&) = default;

  private:
    void trim();
    std::vector<std::int64_t> c_;
};

//! Euler's totient
std::int64_t euler_phi(std::int64_t n);

//! The n-th cyclotomic polynomial, built from products and quotients of
//! binomials x^d - 1 over the divisors of n
IntPoly cyclotomic(std::int64_t n);

//! True when the primitive n-th roots of unity are roots of p
bool divisible_by_cyclotomic(IntPoly const& p, std::int64_t n);

/*!
 * Whether \f$\sum_k \zeta_q^{e_k} = 0\f$ for a primitive q-th root of unity.
 *
 * Exponents are reduced mod q, then the sum is tested by divisibility of
 * \f$\sum_k x^{e_k}\f$ by the q-th cyclotomic polynomial.
 */
bool root_of_unity_sum_vanishes(std::vector<std::int64_t> const& exponents,
                                std::int64_t q);

/*!
 * All complex roots of p (degree >= 1) via the companion-matrix
 * eigenvalues, each refined with a few Newton steps.
 */
std::vector<std::complex<double>> polynomial_roots(IntPoly const& p);

}  // namespace spectral
