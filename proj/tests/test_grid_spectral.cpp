#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mch/initial_data.hpp"
#include "mch/spectral.hpp"

using namespace mch;

namespace {

std::shared_ptr<const Grid> small_grid() { return Grid::make(M_PI, 16); }

Field sampled(std::shared_ptr<const Grid> g, double (*fn)(double)) {
  Field f(g);
  for (int i = 0; i < f.size(); ++i) f.v[i] = fn(g->node(i));
  return f;
}

Field white_noise(std::shared_ptr<const Grid> g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Field f(g);
  for (double& v : f.v) v = dist(rng);
  return f;
}

}  // namespace

TEST_CASE("grid construction and tabulated symbols") {
  auto g = small_grid();
  CHECK(g->size() == 16);
  CHECK(g->dx() == doctest::Approx(2.0 * M_PI / 16).epsilon(1e-15));
  // dx * n = 2L exactly
  CHECK(g->dx() * g->size() == doctest::Approx(2.0 * g->half_length()).epsilon(1e-15));

  // L = pi makes the signed wavenumbers the integers -8..7
  for (int j = 0; j < 16; ++j) {
    const int expect = (j < 8) ? j : j - 16;
    CHECK(g->signed_xi(j) == doctest::Approx(double(expect)).epsilon(1e-14));
  }

  CHECK(g->helmholtz_symbol(0) == 1.0);
  CHECK(g->helmholtz_symbol(1) == doctest::Approx(0.5).epsilon(1e-15));
  for (int k = 0; k < g->spectrum_size(); ++k) {
    CHECK(g->helmholtz_symbol(k) > 0.0);
    CHECK(g->helmholtz_symbol(k) <= 1.0);
    if (k > 0) CHECK(g->helmholtz_symbol(k) < 1.0);
  }

  auto big = Grid::make(20.0 * M_PI, 1024);
  CHECK(big->dx() == doctest::Approx(40.0 * M_PI / 1024).epsilon(1e-15));

  CHECK_THROWS_AS(Grid::make(M_PI, 100), std::invalid_argument);   // not a power of two
  CHECK_THROWS_AS(Grid::make(M_PI, 8), std::invalid_argument);     // too small
  CHECK_THROWS_AS(Grid::make(0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make(-1.0, 64), std::invalid_argument);
}

TEST_CASE("spectral derivative exact on single modes") {
  auto g = small_grid();
  const Field s = sampled(g, [](double x) { return std::sin(x); });
  const Field c = sampled(g, [](double x) { return std::cos(x); });
  CHECK(max_abs(spectral_deriv(s, 1) - c) < 1e-14);

  const Field k = Field(g, 3.7);
  CHECK(max_abs(spectral_deriv(k, 1)) < 1e-14);

  CHECK_THROWS_AS(spectral_deriv(s, 4), std::invalid_argument);
  CHECK_THROWS_AS(spectral_deriv(s, 0), std::invalid_argument);
}

TEST_CASE("second derivative of a gaussian against the closed form") {
  auto g = Grid::make(20.0 * M_PI, 1024);
  const Field f = gaussian(g, 1.0, 1.0, 0.0);
  Field expect(g);
  for (int i = 0; i < f.size(); ++i) {
    const double x = g->node(i);
    expect.v[i] = -2.0 * (1.0 - 2.0 * x * x) * std::exp(-x * x);
  }
  CHECK(max_abs(spectral_deriv(f, 2) - expect) < 1e-10);
}

TEST_CASE("helmholtz inverse on eigenmodes and the zero field") {
  auto g = small_grid();
  const Field c = sampled(g, [](double x) { return std::cos(x); });
  const Field half = helmholtz_inv(c);
  for (int i = 0; i < c.size(); ++i)
    CHECK(half.v[i] == doctest::Approx(0.5 * c.v[i]).epsilon(1e-13));
  CHECK(max_abs(helmholtz_inv(Field(g))) == 0.0);
}

TEST_CASE("helmholtz inverse against the kernel quadrature") {
  auto g = Grid::make(10.0 * M_PI, 1024);
  const Field f = gaussian(g, 1.0, 1.0, 0.0);
  const Field a = helmholtz_inv(f);
  const Field b = green_convolve_quadrature(f, 0);
  CHECK(max_abs(a - b) < 1e-8);
}

TEST_CASE("kernel quadrature basics") {
  auto g = Grid::make(10.0 * M_PI, 256);
  CHECK(max_abs(green_convolve_quadrature(Field(g), 0)) == 0.0);
  CHECK(max_abs(green_convolve_quadrature(Field(g), 1)) == 0.0);
  CHECK_THROWS_AS(green_convolve_quadrature(Field(g), 2), std::invalid_argument);

  // derivative kernel maps even data to odd output
  const Field even = gaussian(g, 1.0, 1.0, 0.0);
  const Field odd = green_convolve_quadrature(even, 1);
  const int n = g->size();
  for (int i = 1; i < n; ++i)
    CHECK(odd.v[i] == doctest::Approx(-odd.v[n - i]).epsilon(1e-10));
}

TEST_CASE("helmholtz parity preservation") {
  auto g = Grid::make(10.0 * M_PI, 256);
  const Field even = gaussian(g, 1.0, 1.0, 0.0);
  const Field he = helmholtz_inv(even);
  const int n = g->size();
  for (int i = 1; i < n; ++i)
    CHECK(he.v[i] == doctest::Approx(he.v[n - i]).epsilon(1e-12));

  Field odd(g);
  for (int i = 0; i < n; ++i) {
    const double x = g->node(i);
    odd.v[i] = x * std::exp(-x * x);
  }
  const Field ho = helmholtz_inv(odd);
  for (int i = 1; i < n; ++i)
    CHECK(ho.v[i] == doctest::Approx(-ho.v[n - i]).epsilon(1e-12));
}

TEST_CASE("quadrature path agrees for fields decaying inside the box") {
  // property run over a few widths and centers
  auto g = Grid::make(10.0 * M_PI, 1024);
  for (double w : {0.8, 1.0, 1.6}) {
    for (double x0 : {-2.0, 0.0, 1.5}) {
      const Field f = gaussian(g, 1.0, w, x0);
      REQUIRE(boundary_magnitude(f, 0.5) < 1e-12);
      CHECK(max_abs(helmholtz_inv(f) - green_convolve_quadrature(f, 0)) < 1e-7);
    }
  }
}

TEST_CASE("dealias leaves band-limited fields alone and kills high modes") {
  auto g = small_grid();
  const Field lo = sampled(g, [](double x) { return std::cos(3.0 * x); });
  CHECK(max_abs(dealias(lo) - lo) < 1e-14);

  // mode n/2 - 1 = 7 sits above the 2/3 cutoff (16/3)
  const Field hi = sampled(g, [](double x) { return std::cos(7.0 * x); });
  CHECK(max_abs(dealias(hi)) < 1e-14);
}

TEST_CASE("dealias does not grow white noise in the max norm") {
  for (unsigned seed : {1u, 7u, 42u, 1234u}) {
    auto g = Grid::make(M_PI, 256);
    const Field f = white_noise(g, seed);
    CHECK(max_abs(dealias(f)) <= max_abs(f));
  }
}

TEST_CASE("derivative commutes with dealias") {
  auto g = Grid::make(M_PI, 128);
  const Field f = white_noise(g, 99);
  const Field a = spectral_deriv(dealias(f), 1);
  const Field b = dealias(spectral_deriv(f, 1));
  CHECK(max_abs(a - b) < 1e-10 * std::max(1.0, max_abs(b)));
}

TEST_CASE("helmholtz_inv inverts (1 - d^2/dx^2) on band-limited fields") {
  auto g = Grid::make(M_PI, 128);
  const Field f = dealias(white_noise(g, 5));
  const Field back = helmholtz_inv(f - spectral_deriv(f, 2));
  CHECK(max_abs(back - f) < 1e-12 * std::max(1.0, max_abs(f)));
}

TEST_CASE("trigonometric interpolation reproduces samples and intermediate values") {
  auto g = Grid::make(M_PI, 64);
  const Field f = sampled(g, [](double x) { return std::sin(2.0 * x) + 0.3 * std::cos(5.0 * x); });
  const Spectrum s = g->forward(f.v);
  for (int i = 0; i < f.size(); i += 7)
    CHECK(eval_trig(*g, s, g->node(i)) == doctest::Approx(f.v[i]).epsilon(1e-12));
  const double x = 0.4321;
  CHECK(eval_trig(*g, s, x) ==
        doctest::Approx(std::sin(2.0 * x) + 0.3 * std::cos(5.0 * x)).epsilon(1e-12));
}

TEST_CASE("exponential filter variant keeps resolved content") {
  auto g = Grid::make(M_PI, 128);
  const Field f = sampled(g, [](double x) { return std::cos(4.0 * x); });
  CHECK(max_abs(dealias_filtered(f) - f) < 1e-10);
}

TEST_CASE("sharp low-pass keeps and removes the right bins") {
  auto g = small_grid();
  const Field two = sampled(g, [](double x) { return std::cos(2.0 * x); });
  CHECK(max_abs(low_pass(two, 2.0) - two) < 1e-14);
  CHECK(max_abs(low_pass(two, 1.9)) < 1e-14);
}
