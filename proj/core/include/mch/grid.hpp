#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace mch {

using Spectrum = std::vector<std::complex<double>>;

// Uniform periodic grid on [-L, L) with n samples, n a power of two.
// Tabulates the nodes, the wavenumbers xi_k = pi*k/L of the real-to-complex
// transform layout (k = 0..n/2), and the symbol 1/(1+xi^2) that inverts
// (1 - d^2/dx^2). Owns the FFT plans for this size.
//
// Convention: forward transform unnormalized, inverse divides by n.
// Immutable after construction; plan execution on caller-provided buffers is
// thread-safe, so a Grid may be shared freely between threads.
class Grid {
 public:
  static std::shared_ptr<const Grid> make(double half_length, int n);
  ~Grid();

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  double half_length() const { return half_length_; }
  int size() const { return n_; }
  double dx() const { return dx_; }
  int spectrum_size() const { return n_ / 2 + 1; }

  // Node x_j = -L + j*dx.
  double node(int j) const { return x_[j]; }
  const std::vector<double>& nodes() const { return x_; }

  // Wavenumber of r2c bin k (k = 0..n/2), xi_k = pi*k/L.
  double xi(int k) const { return xi_[k]; }
  const std::vector<double>& wavenumbers() const { return xi_; }

  // Signed wavenumber of c2c bin j (j = 0..n-1), covering -n/2..n/2-1.
  double signed_xi(int j) const;

  // 1/(1 + xi_k^2), in (0,1], equal to 1 only at k = 0.
  double helmholtz_symbol(int k) const { return helmholtz_[k]; }

  // Largest resolved wavenumber, xi_{n/2}.
  double xi_max() const { return xi_.back(); }

  // Unnormalized forward transform of n real samples into n/2+1 bins.
  Spectrum forward(const std::vector<double>& samples) const;
  // Inverse transform, divides by n. Destroys nothing; spec passed by value.
  std::vector<double> inverse(Spectrum spec) const;

 private:
  Grid(double half_length, int n);

  double half_length_;
  int n_;
  double dx_;
  std::vector<double> x_;
  std::vector<double> xi_;
  std::vector<double> helmholtz_;

  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace mch
