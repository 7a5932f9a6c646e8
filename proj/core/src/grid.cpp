#include "mch/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace mch {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Per-thread scratch sized for the largest grid seen by that thread.
struct Scratch {
  std::vector<double> real;
  std::vector<std::complex<double>> cplx;
  void ensure(int n) {
    if (static_cast<int>(real.size()) < n) real.resize(n);
    if (static_cast<int>(cplx.size()) < n / 2 + 1) cplx.resize(n / 2 + 1);
  }
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

struct Grid::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

std::shared_ptr<const Grid> Grid::make(double half_length, int n) {
  if (!is_power_of_two(n) || n < 16)
    throw std::invalid_argument("grid: n must be a power of two, n >= 16");
  if (!(half_length > 0.0))
    throw std::invalid_argument("grid: half length must be positive");
  return std::shared_ptr<const Grid>(new Grid(half_length, n));
}

Grid::Grid(double half_length, int n)
    : half_length_(half_length),
      n_(n),
      dx_(2.0 * half_length / n),
      plans_(std::make_unique<Plans>()) {
  x_.resize(n_);
  for (int j = 0; j < n_; ++j) x_[j] = -half_length_ + j * dx_;

  const int ns = n_ / 2 + 1;
  xi_.resize(ns);
  helmholtz_.resize(ns);
  const double pi_over_l = M_PI / half_length_;
  for (int k = 0; k < ns; ++k) {
    xi_[k] = pi_over_l * k;
    helmholtz_[k] = 1.0 / (1.0 + xi_[k] * xi_[k]);
  }

  std::vector<double> in(n_, 0.0);
  std::vector<std::complex<double>> out(ns);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plans_->fwd = fftw_plan_dft_r2c_1d(
      n_, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
      FFTW_ESTIMATE);
  plans_->inv = fftw_plan_dft_c2r_1d(
      n_, reinterpret_cast<fftw_complex*>(out.data()), in.data(),
      FFTW_ESTIMATE);
  if (!plans_->fwd || !plans_->inv)
    throw std::runtime_error("grid: FFT plan creation failed");
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plans_->fwd) fftw_destroy_plan(plans_->fwd);
  if (plans_->inv) fftw_destroy_plan(plans_->inv);
}

double Grid::signed_xi(int j) const {
  const int k = (j < n_ / 2) ? j : j - n_;
  return M_PI * k / half_length_;
}

Spectrum Grid::forward(const std::vector<double>& samples) const {
  if (static_cast<int>(samples.size()) != n_)
    throw std::invalid_argument("forward: sample count mismatch");
  auto& s = scratch();
  s.ensure(n_);
  std::copy(samples.begin(), samples.end(), s.real.begin());
  Spectrum out(spectrum_size());
  fftw_execute_dft_r2c(plans_->fwd, s.real.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> Grid::inverse(Spectrum spec) const {
  if (static_cast<int>(spec.size()) != spectrum_size())
    throw std::invalid_argument("inverse: spectrum size mismatch");
  std::vector<double> out(n_);
  // c2r destroys its input; spec is a by-value copy so that is fine.
  fftw_execute_dft_c2r(plans_->inv,
                       reinterpret_cast<fftw_complex*>(spec.data()),
                       out.data());
  const double scale = 1.0 / n_;
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace mch
