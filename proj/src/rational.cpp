#include "spectral/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>

namespace spectral
{
namespace
{
using wide = __int128;

wide gcd_wide(wide a, wide b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0)
    {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(wide v)
{
    return v >= std::numeric_limits<std::int64_t>::min()
           && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view s)
{
    std::int64_t v{};
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not an integer: '" + std::string(s)
                                    + "'");
    return v;
}
}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0)
        throw std::domain_error("rational with zero denominator");
    *this = from_wide(n, d);
}

Rational Rational::from_wide(wide n, wide d)
{
    if (d == 0)
        throw std::domain_error("rational with zero denominator");
    if (d < 0)
    {
        n = -n;
        d = -d;
    }
    wide g = gcd_wide(n, d);
    if (g > 1)
    {
        n /= g;
        d /= g;
    }
    if (!fits(n) || !fits(d))
        throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

std::int64_t Rational::floor() const
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0)
        --q;
    return q;
}

std::int64_t Rational::ceil() const
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0)
        ++q;
    return q;
}

Rational Rational::operator-() const
{
    return from_wide(-static_cast<wide>(num_), den_);
}

Rational& Rational::operator+=(Rational const& o)
{
    if (den_ == o.den_)
        return *this = from_wide(static_cast<wide>(num_) + o.num_, den_);
    return *this = from_wide(static_cast<wide>(num_) * o.den_
                                 + static_cast<wide>(o.num_) * den_,
                             static_cast<wide>(den_) * o.den_);
}

Rational& Rational::operator-=(Rational const& o)
{
    return *this += -o;
}

Rational& Rational::operator*=(Rational const& o)
{
    return *this = from_wide(static_cast<wide>(num_) * o.num_,
                             static_cast<wide>(den_) * o.den_);
}

Rational& Rational::operator/=(Rational const& o)
{
    if (o.num_ == 0)
        throw std::domain_error("rational division by zero");
    return *this = from_wide(static_cast<wide>(num_) * o.den_,
                             static_cast<wide>(den_) * o.num_);
}

std::strong_ordering operator<=>(Rational const& a, Rational const& b)
{
    wide lhs = static_cast<wide>(a.num_) * b.den_;
    wide rhs = static_cast<wide>(b.num_) * a.den_;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text)
{
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    if (text.empty())
        throw std::invalid_argument("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos)
    {
        return Rational(parse_int(text.substr(0, slash)),
                        parse_int(text.substr(slash + 1)));
    }

    // Decimal with optional exponent
    std::int64_t exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos)
    {
        exponent = parse_int(text.substr(e + 1));
        text = text.substr(0, e);
    }
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+'))
    {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::string digits;
    std::int64_t frac_digits = 0;
    bool seen_point = false;
    for (char c : text)
    {
        if (c == '.' && !seen_point)
        {
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9')
            throw std::invalid_argument("bad rational literal: '"
                                        + std::string(text) + "'");
        digits.push_back(c);
        if (seen_point)
            ++frac_digits;
    }
    if (digits.empty())
        throw std::invalid_argument("bad rational literal");
    exponent -= frac_digits;
    if (exponent > 18 || exponent < -18)
        throw std::overflow_error("decimal exponent out of range");
    Rational r(parse_int(digits));
    std::int64_t scale = 1;
    for (std::int64_t i = 0; i < (exponent < 0 ? -exponent : exponent); ++i)
        scale *= 10;
    r = exponent < 0 ? r / Rational(scale) : r * Rational(scale);
    return negative ? -r : r;
}

std::ostream& operator<<(std::ostream& os, Rational const& r)
{
    return os << r.str();
}

Rational mod(Rational const& x, Rational const& m)
{
    if (m.sign() <= 0)
        throw std::domain_error("mod requires a positive modulus");
    Rational q = x / m;
    return x - m * Rational(q.floor());
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0)
        return 0;
    wide r = static_cast<wide>(a / std::gcd(a, b)) * b;
    if (r < 0)
        r = -r;
    if (!fits(r))
        throw std::overflow_error("lcm overflow");
    return static_cast<std::int64_t>(r);
}

Rational lcm(Rational const& a, Rational const& b)
{
    // lcm(p/q, r/s) = lcm(p, r) / gcd(q, s) for canonical positive values
    std::int64_t n = lcm_checked(a.abs().num(), b.abs().num());
    std::int64_t d = std::gcd(a.den(), b.den());
    return Rational(n, d);
}

std::vector<double> to_doubles(RVec const& v)
{
    std::vector<double> out;
    out.reserve(v.size());
    for (auto const& r : v)
        out.push_back(r.to_double());
    return out;
}

std::string str(RVec const& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i];
    os << ')';
    return os.str();
}

RVec operator+(RVec const& a, RVec const& b)
{
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

RVec operator-(RVec const& a, RVec const& b)
{
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

RVec operator-(RVec const& a)
{
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = -a[i];
    return r;
}

Rational dot(RVec const& a, RVec const& b)
{
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

//---------------------------------------------------------------------------//
// RMatrix
//---------------------------------------------------------------------------//

RMatrix RMatrix::identity(std::size_t n)
{
    RMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RMatrix RMatrix::diagonal(RVec const& diag)
{
    RMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

RMatrix RMatrix::from_columns(std::vector<RVec> const& cols)
{
    RMatrix m(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
    {
        if (cols[j].size() != cols.size())
            throw std::invalid_argument("basis must be square");
        for (std::size_t i = 0; i < cols.size(); ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

RVec RMatrix::column(std::size_t j) const
{
    RVec c(n_);
    for (std::size_t i = 0; i < n_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

bool RMatrix::is_diagonal() const
{
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i != j && !(*this)(i, j).is_zero())
                return false;
    return true;
}

Rational RMatrix::determinant() const
{
    RMatrix a = *this;
    Rational det = 1;
    for (std::size_t c = 0; c < n_; ++c)
    {
        std::size_t pivot = c;
        while (pivot < n_ && a(pivot, c).is_zero())
            ++pivot;
        if (pivot == n_)
            return 0;
        if (pivot != c)
        {
            for (std::size_t j = 0; j < n_; ++j)
                std::swap(a(pivot, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n_; ++r)
        {
            if (a(r, c).is_zero())
                continue;
            Rational f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n_; ++j)
                a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

RMatrix RMatrix::inverse() const
{
    RMatrix a = *this;
    RMatrix inv = identity(n_);
    for (std::size_t c = 0; c < n_; ++c)
    {
        std::size_t pivot = c;
        while (pivot < n_ && a(pivot, c).is_zero())
            ++pivot;
        if (pivot == n_)
            throw std::domain_error("singular matrix");
        for (std::size_t j = 0; j < n_; ++j)
        {
            std::swap(a(pivot, j), a(c, j));
            std::swap(inv(pivot, j), inv(c, j));
        }
        Rational p = a(c, c);
        for (std::size_t j = 0; j < n_; ++j)
        {
            a(c, j) /= p;
            inv(c, j) /= p;
        }
        for (std::size_t r = 0; r < n_; ++r)
        {
            if (r == c || a(r, c).is_zero())
                continue;
            Rational f = a(r, c);
            for (std::size_t j = 0; j < n_; ++j)
            {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

RMatrix RMatrix::transpose() const
{
    RMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RVec RMatrix::operator*(RVec const& v) const
{
    RVec r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            r[i] += (*this)(i, j) * v[j];
    return r;
}

RMatrix operator*(RMatrix const& a, RMatrix const& b)
{
    RMatrix r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t k = 0; k < a.n_; ++k)
            for (std::size_t j = 0; j < a.n_; ++j)
                r(i, j) += a(i, k) * b(k, j);
    return r;
}

}  // namespace spectral
