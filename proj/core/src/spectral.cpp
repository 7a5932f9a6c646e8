#include "mch/spectral.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mch {

namespace {

// Multiply bin k of the spectrum by (i*xi_k)^order in place.
void apply_deriv_symbol(const Grid& g, Spectrum& s, int order) {
  const int ns = g.spectrum_size();
  switch (order) {
    case 1:
      for (int k = 0; k < ns; ++k)
        s[k] *= std::complex<double>(0.0, g.xi(k));
      s[ns - 1] = 0.0;  // Nyquist carries no sign information
      break;
    case 2:
      for (int k = 0; k < ns; ++k) s[k] *= -g.xi(k) * g.xi(k);
      break;
    case 3:
      for (int k = 0; k < ns; ++k)
        s[k] *= std::complex<double>(0.0, -g.xi(k) * g.xi(k) * g.xi(k));
      s[ns - 1] = 0.0;
      break;
    default:
      throw std::invalid_argument("spectral_deriv: order must be 1, 2 or 3");
  }
}

}  // namespace

Field spectral_deriv(const Field& f, int order) {
  if (order < 1 || order > 3)
    throw std::invalid_argument("spectral_deriv: order must be 1, 2 or 3");
  Spectrum s = f.grid->forward(f.v);
  apply_deriv_symbol(*f.grid, s, order);
  return Field(f.grid, f.grid->inverse(std::move(s)));
}

Field helmholtz_inv(const Field& f) {
  Spectrum s = f.grid->forward(f.v);
  for (int k = 0; k < f.grid->spectrum_size(); ++k)
    s[k] *= f.grid->helmholtz_symbol(k);
  return Field(f.grid, f.grid->inverse(std::move(s)));
}

Field dealias(const Field& f) {
  const int n = f.grid->size();
  Spectrum s = f.grid->forward(f.v);
  for (int k = n / 3 + 1; k < f.grid->spectrum_size(); ++k) s[k] = 0.0;
  return Field(f.grid, f.grid->inverse(std::move(s)));
}

Field dealias_filtered(const Field& f) {
  const int n = f.grid->size();
  const double half = n / 2.0;
  Spectrum s = f.grid->forward(f.v);
  for (int k = 0; k < f.grid->spectrum_size(); ++k) {
    if (k > n / 3) {
      s[k] = 0.0;
      continue;
    }
    const double r = k / half;
    s[k] *= std::exp(-36.0 * std::pow(r, 16));
  }
  return Field(f.grid, f.grid->inverse(std::move(s)));
}

Field low_pass(const Field& f, double xi_cut) {
  Spectrum s = f.grid->forward(f.v);
  for (int k = 0; k < f.grid->spectrum_size(); ++k)
    if (f.grid->xi(k) > xi_cut) s[k] = 0.0;
  return Field(f.grid, f.grid->inverse(std::move(s)));
}

Field green_convolve_quadrature(const Field& f, int derivative) {
  if (derivative != 0 && derivative != 1)
    throw std::invalid_argument("green_convolve_quadrature: derivative in {0,1}");
  const Grid& g = *f.grid;
  const int n = g.size();
  const double dx = g.dx();

  std::vector<double> decay(n);
  for (int d = 0; d < n; ++d) decay[d] = std::exp(-d * dx);

  Field out(f.grid);
  const auto& fv = f.v;
  if (derivative == 0) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += decay[std::abs(i - j)] * fv[j];
      out.v[i] = 0.5 * dx * acc;
    }
  } else {
    // kernel value -sign(x_i - x_j) exp(-|x_i - x_j|)/2, zero on the diagonal
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < i; ++j) acc -= decay[i - j] * fv[j];
      for (int j = i + 1; j < n; ++j) acc += decay[j - i] * fv[j];
      out.v[i] = 0.5 * dx * acc;
    }
  }

  // Euler-Maclaurin corrections for the kernel kink sitting on the target
  // node. Derivatives by centered differences keep this path FFT-free.
  const double c2 = dx * dx / 12.0;
  const double c4 = dx * dx * dx * dx / 720.0;
  auto at = [&](int i) { return fv[((i % n) + n) % n]; };
  for (int i = 0; i < n; ++i) {
    const double fm2 = at(i - 2), fm1 = at(i - 1), f0 = fv[i], fp1 = at(i + 1),
                 fp2 = at(i + 2);
    const double d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * dx);
    const double d2 =
        (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * dx * dx);
    const double d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * dx * dx * dx);
    if (derivative == 0) {
      out.v[i] += -c2 * f0 + c4 * (f0 + 3.0 * d2);
    } else {
      out.v[i] += c2 * d1 - c4 * (3.0 * d1 + d3);
    }
  }
  return out;
}

double eval_trig(const Grid& grid, const Spectrum& spec, double x) {
  const int n = grid.size();
  int ktop = grid.spectrum_size() - 1;
  while (ktop > 0 && std::norm(spec[ktop]) < 1e-300) --ktop;

  const double theta = M_PI / grid.half_length() * (x + grid.half_length());
  const std::complex<double> rot(std::cos(theta), std::sin(theta));
  std::complex<double> ph = rot;
  double acc = spec[0].real();
  for (int k = 1; k <= ktop; ++k) {
    const double w = (k == n / 2) ? 1.0 : 2.0;
    acc += w * (spec[k] * ph).real();
    ph *= rot;
  }
  return acc / n;
}

std::vector<double> eval_trig(const Grid& grid, const Spectrum& spec,
                              const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) out[i] = eval_trig(grid, spec, xs[i]);
  return out;
}

}  // namespace mch
