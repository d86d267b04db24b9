#ifndef ARMTRAJ_SPECIAL_HPP_
#define ARMTRAJ_SPECIAL_HPP_

namespace armtraj::special {

/// Error function, rational-approximation implementation (abs error
/// below 1.3e-7 everywhere). Self-contained so erf_inv can invert it
/// exactly.
double erf_approx(double x);

/// Complementary error function, same approximation family.
double erfc_approx(double x);

/// Inverse of erf_approx on (-1, 1). Newton iteration on erf_approx
/// itself, so erf_approx(erf_inv(y)) == y to machine precision even
/// though erf_approx differs from the true erf in the 8th digit.
/// Throws ValidationError for |y| >= 1.
double erf_inv(double y);

}  // namespace armtraj::special

#endif  // ARMTRAJ_SPECIAL_HPP_
