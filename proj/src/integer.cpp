#include "imp/integer.hpp"

namespace imp {

Integer normalize32(const Integer& n) {
  static const Integer modulus = Integer{1} << 32;
  static const Integer half = Integer{1} << 31;
  Integer r = n % modulus;  // sign follows n
  if (r < 0) r += modulus;
  if (r >= half) r -= modulus;
  return r;
}

Integer floor_div(const Integer& dividend, const Integer& divisor) {
  Integer q = dividend / divisor;  // truncates toward zero
  Integer r = dividend % divisor;
  if (r != 0 && ((r < 0) != (divisor < 0))) --q;
  return q;
}

}  // namespace imp
