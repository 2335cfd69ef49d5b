#ifndef CJET_BESSEL_HPP
#define CJET_BESSEL_HPP

namespace cjet::bessel {

// Series/asymptotic crossover.  Both branches deliver >= 14 digits here.
inline constexpr double kCrossover = 20.0;

// Unscaled values overflow past this; callers wanting larger arguments must
// use the scaled variants.
inline constexpr double kOverflowGuard = 700.0;

/// Modified Bessel I0(x).  Throws Overflow for |x| > 700.
double i0(double x);

/// I1(x) = I0'(x).  Throws Overflow for |x| > 700.
double i1(double x);

/// Exponentially scaled e^{-|x|} I0(x); total on finite input.
double i0_scaled(double x);

/// Exponentially scaled e^{-|x|} I1(x).
double i1_scaled(double x);

/// k-th derivative of I0, for 0 <= k <= 6.  k >= 2 uses the integral
/// representation with a fixed 64-node Gauss-Legendre rule.
double i0_deriv(int k, double x);

/// e^{-|x|} I0^{(k)}(x), stable for large |x|.
double i0_deriv_scaled(int k, double x);

/// I1(x)/I0(x), in (-1,1), odd and monotone; never overflows.
double ratio_i1_i0(double x);

/// I0^{(k)}(y x)/I0(x) for y in [0,1], computed through scaled evaluations.
double ratio_i0k(int k, double y, double x);

} // namespace cjet::bessel

#endif
