#pragma once

#include "mch/field.hpp"

namespace mch {

// FFT-based derivative of order 1, 2 or 3. Exact for resolved trigonometric
// modes; the Nyquist bin is zeroed for odd orders.
Field spectral_deriv(const Field& f, int order);

// (1 - d^2/dx^2)^{-1} f, a Fourier multiplier by 1/(1+xi^2).
Field helmholtz_inv(const Field& f);

// Zero every bin with |k| > n/3 (the 2/3 rule for cubic products).
Field dealias(const Field& f);

// 2/3 rule followed by the order-8 exponential damping
// exp(-alpha (k/(n/2))^(2p)) with alpha = 36, p = 8. Used for
// low-regularity (peaked) data where the sharp cutoff alone rings.
Field dealias_filtered(const Field& f);

// Sharp low-pass: keep bins with xi_k <= xi_cut.
Field low_pass(const Field& f, double xi_cut);

// Direct real-space quadrature of the convolution with the kernel
// g(x) = exp(-|x|)/2 (derivative = 0) or with g'(x) (derivative = 1),
// over one period with the non-periodic kernel. Trapezoid rule with the
// Euler-Maclaurin corrections for the kernel kink at the target node;
// derivative corrections use centered finite differences, so this path
// never touches the FFT and serves as an independent cross-check of
// helmholtz_inv. O(n^2).
//
// Meaningful only when f decays at the box boundary; callers enforce or
// warn on that precondition.
Field green_convolve_quadrature(const Field& f, int derivative);

// Value of the trigonometric interpolant of spec at an arbitrary point x.
// spec must be the unnormalized forward transform on this grid.
double eval_trig(const Grid& grid, const Spectrum& spec, double x);

// Same, for a batch of points.
std::vector<double> eval_trig(const Grid& grid, const Spectrum& spec,
                              const std::vector<double>& xs);

}  // namespace mch
