#ifndef PICX_OVERFLOW_HPP
#define PICX_OVERFLOW_HPP

#include <cstdint>
#include <stdexcept>

namespace picx {

// All lattice arithmetic is exact 64-bit and fails loudly on wraparound.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a)
{
  return checked_sub(0, a);
}

} // namespace picx

#endif
