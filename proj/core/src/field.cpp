#include "mch/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mch {

Field::Field(std::shared_ptr<const Grid> g, double fill)
    : grid(std::move(g)), v(grid->size(), fill) {}

Field::Field(std::shared_ptr<const Grid> g, std::vector<double> samples)
    : grid(std::move(g)), v(std::move(samples)) {
  if (static_cast<int>(v.size()) != grid->size())
    throw std::invalid_argument("field: sample count must equal grid size");
}

Field& Field::operator+=(const Field& o) {
  for (int i = 0; i < size(); ++i) v[i] += o.v[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  for (int i = 0; i < size(); ++i) v[i] -= o.v[i];
  return *this;
}

Field& Field::operator*=(double a) {
  for (double& x : v) x *= a;
  return *this;
}

bool Field::finite() const {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double a, Field f) { return f *= a; }

Field axpy(const Field& a, double s, const Field& b) {
  Field out = a;
  for (int i = 0; i < out.size(); ++i) out.v[i] += s * b.v[i];
  return out;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

double min_value(const Field& f) {
  return *std::min_element(f.v.begin(), f.v.end());
}

double max_value(const Field& f) {
  return *std::max_element(f.v.begin(), f.v.end());
}

double integrate(const Field& f) {
  double s = 0.0;
  for (double x : f.v) s += x;
  return s * f.grid->dx();
}

double l2_norm(const Field& f) {
  double s = 0.0;
  for (double x : f.v) s += x * x;
  return std::sqrt(s * f.grid->dx());
}

double h1_norm(const Field& f, const Field& fx) {
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) s += f.v[i] * f.v[i] + fx.v[i] * fx.v[i];
  return std::sqrt(s * f.grid->dx());
}

double boundary_magnitude(const Field& f, double fraction) {
  const double cut = fraction * f.grid->half_length();
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i)
    if (std::abs(f.grid->node(i)) >= cut) m = std::max(m, std::abs(f.v[i]));
  return m;
}

}  // namespace mch
