#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fkm/hyper_dual.hpp"

namespace fkm {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Factor in front of the exterior derivative of a 1-form.
///   PLAIN: (d eta)(X,Y) = X eta(Y) - Y eta(X) - eta([X,Y])
///   HALF:  one half of PLAIN
enum class Convention { Half, Plain };

std::string_view to_string(Convention c);
Convention convention_from_string(std::string_view name);

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

/// A point given by its chart coordinates.
struct Point {
  VectorXd coords;
};

// Field evaluators take the chart coordinates as hyper-dual numbers so that
// derivative payloads flow through them untouched.
using MatrixField = std::function<DualMatrix(const DualVector&)>;
using VectorField = std::function<DualVector(const DualVector&)>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Metric not invertible (or not positive definite) at a point.
class DegenerateMetricError : public GeometryError {
 public:
  DegenerateMetricError(const std::string& what, VectorXd point)
      : GeometryError(what), point_(std::move(point)) {}
  const VectorXd& point() const { return point_; }

 private:
  VectorXd point_;
};

/// An operation was called outside the regime where it is defined.
class PreconditionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotApplicableError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class InsufficientSampleError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class InvalidSectionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class InconsistencyError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Everything needed to describe (M, f, xi_a, eta_a, g) on a single chart.
/// Immutable after construction; copies share nothing mutable.
///
/// Conventions for the evaluators at a chart point x:
///   metric(x)(i,j)    = g_ij
///   structure(x)(i,j) = f^i_j   (column j is f applied to d/dx_j)
///   xi[a](x)(i)       = xi_a^i
///   eta[a](x)(i)      = (eta_a)_i
struct ModelSpec {
  int n = 1;
  int s = 1;
  MatrixField metric;
  MatrixField structure;
  std::vector<VectorField> xi;
  std::vector<VectorField> eta;
  std::vector<Interval> domain;  // empty: [-1, 1] per axis
  Convention convention = Convention::Half;
  std::string label;
};

class ManifoldModel {
 public:
  /// Throws std::invalid_argument on inconsistent dimensions or a
  /// missing evaluator.
  explicit ManifoldModel(ModelSpec spec);

  int n() const { return spec_.n; }
  int s() const { return spec_.s; }
  int dim() const { return 2 * spec_.n + spec_.s; }
  Convention convention() const { return spec_.convention; }
  const std::string& label() const { return spec_.label; }
  const std::vector<Interval>& domain() const { return spec_.domain; }

  DualMatrix metric(const DualVector& x) const { return spec_.metric(x); }
  DualMatrix structure(const DualVector& x) const { return spec_.structure(x); }
  DualVector xi(int alpha, const DualVector& x) const { return spec_.xi.at(alpha)(x); }
  DualVector eta(int alpha, const DualVector& x) const { return spec_.eta.at(alpha)(x); }

  const ModelSpec& spec() const { return spec_; }

 private:
  ModelSpec spec_;
};

// Helpers for field evaluation at plain (payload-free) points.
DualVector lift(const VectorXd& x);
VectorXd value_of(const DualVector& v);
MatrixXd value_of(const DualMatrix& m);

/// x with x_i carrying e1 and x_j carrying e2 (pass -1 to leave one unseeded).
DualVector seeded(const VectorXd& x, int i, int j);

}  // namespace fkm
