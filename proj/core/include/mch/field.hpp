#pragma once

#include <memory>
#include <vector>

#include "mch/grid.hpp"

namespace mch {

// Real samples of a function on a grid. Value type: copying a Field copies
// the samples and shares the grid.
struct Field {
  std::shared_ptr<const Grid> grid;
  std::vector<double> v;

  Field() = default;
  Field(std::shared_ptr<const Grid> g, double fill = 0.0);
  Field(std::shared_ptr<const Grid> g, std::vector<double> samples);

  int size() const { return static_cast<int>(v.size()); }
  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);

  // True when every sample is finite.
  bool finite() const;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);

// a + s*b, the workhorse of the time stepper.
Field axpy(const Field& a, double s, const Field& b);

double max_abs(const Field& f);
double min_value(const Field& f);
double max_value(const Field& f);

// Periodic trapezoid quadrature, dx * sum(f).
double integrate(const Field& f);

double l2_norm(const Field& f);

// sqrt of the integral of f^2 + f_x^2, with f_x supplied by the caller.
double h1_norm(const Field& f, const Field& fx);

// Largest |f| within |x| >= fraction * L; the boundary-decay diagnostic.
double boundary_magnitude(const Field& f, double fraction = 0.9);

}  // namespace mch
