#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace spectral
{
//! Base class for all library errors
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error
{
  public:
    using Error::Error;
};

//! Two domain boxes overlap; carries the offending pair and a shared point
class OverlapError : public Error
{
  public:
    OverlapError(std::size_t first, std::size_t second, RVec point)
        : Error("boxes " + std::to_string(first) + " and "
                + std::to_string(second) + " overlap at "
                + spectral::str(point))
        , first_{first}
        , second_{second}
        , point_{std::move(point)}
    {
    }

    std::size_t first() const { return first_; }
    std::size_t second() const { return second_; }
    RVec const& point() const { return point_; }

  private:
    std::size_t first_;
    std::size_t second_;
    RVec point_;
};

#define SPECTRAL_DEFINE_ERROR(NAME) \
    class NAME : public Error       \
    {                               \
      public:                       \
        using Error::Error;         \
    }

SPECTRAL_DEFINE_ERROR(IrrationalData);
SPECTRAL_DEFINE_ERROR(UnboundedTranslateCount);
SPECTRAL_DEFINE_ERROR(NonRationalEndpoints);
SPECTRAL_DEFINE_ERROR(RadiusTooSmall);
SPECTRAL_DEFINE_ERROR(RadiusTooLarge);
SPECTRAL_DEFINE_ERROR(NotDualPoint);
SPECTRAL_DEFINE_ERROR(MeasureNotOne);
SPECTRAL_DEFINE_ERROR(PreconditionFailed);
SPECTRAL_DEFINE_ERROR(IntegralMismatch);
SPECTRAL_DEFINE_ERROR(UnstructuredZeroSet);

#undef SPECTRAL_DEFINE_ERROR

}  // namespace spectral
