#pragma once

// Levi-Civita connection and curvature of a chart model, evaluated pointwise
// from exact first and second metric derivatives.
//
// Index conventions
//   gamma(k, i, j)        = Gamma^k_ij,   nabla_{d_i} d_j = Gamma^k_ij d_k
//   riemann31(l, k, i, j) = R^l_kij,      R(d_i, d_j) d_k = R^l_kij d_l
//   riemann40(i, j, k, l) = g(R(d_i, d_j) d_k, d_l)
// with R(X,Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y].
// Ricci(X,Y) = trace(Z -> R(Z,X)Y) and Q is its metric dual.

#include <cstdint>
#include <vector>

#include "fkm/model.hpp"

namespace fkm {

/// Dense rank-3 array with dimension d in every slot.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int d) : d_(d), data_(static_cast<std::size_t>(d) * d * d, 0.0) {}
  int dim() const { return d_; }
  double& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
  double operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }

 private:
  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * d_ + b) * d_ + c;
  }
  int d_ = 0;
  std::vector<double> data_;
};

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int d) : d_(d), data_(static_cast<std::size_t>(d) * d * d * d, 0.0) {}
  int dim() const { return d_; }
  double& operator()(int a, int b, int c, int e) { return data_[index(a, b, c, e)]; }
  double operator()(int a, int b, int c, int e) const { return data_[index(a, b, c, e)]; }

 private:
  std::size_t index(int a, int b, int c, int e) const {
    return ((static_cast<std::size_t>(a) * d_ + b) * d_ + c) * d_ + e;
  }
  int d_ = 0;
  std::vector<double> data_;
};

struct ConnectionCoefficients {
  Tensor3 gamma;
};

struct CurvatureData {
  Tensor4 riemann31;
  Tensor4 riemann40;
  MatrixXd ricci;     // Ric_ij
  MatrixXd ricci_op;  // Q^i_j
};

/// All pointwise data the checks consume. Jacobians are stored as
/// J(i, k) = d_k V^i.
struct LocalGeometry {
  int n = 0;
  int s = 0;
  int dim = 0;
  VectorXd point;

  MatrixXd g;
  MatrixXd g_inv;
  MatrixXd chol_l;          // g = L L^T
  std::vector<MatrixXd> dg;  // dg[k](i,j) = d_k g_ij

  MatrixXd f;
  std::vector<MatrixXd> df;  // df[k](i,j) = d_k f^i_j
  std::vector<VectorXd> xi;
  std::vector<MatrixXd> dxi;
  std::vector<VectorXd> eta;
  std::vector<MatrixXd> deta;

  ConnectionCoefficients connection;
  std::vector<Tensor3> dgamma;  // dgamma[m](k,i,j) = d_m Gamma^k_ij
  CurvatureData curvature;

  /// R(X,Y)Z for coordinate-component vectors.
  VectorXd R(const VectorXd& x, const VectorXd& y, const VectorXd& z) const;
  /// (nabla_X f) Y.
  VectorXd nabla_f(const VectorXd& x, const VectorXd& y) const;
  double inner(const VectorXd& a, const VectorXd& b) const { return a.dot(g * b); }
  /// Components in a g-orthonormal frame (L^T v), so Euclidean norms of the
  /// result are metric norms.
  VectorXd frame(const VectorXd& v) const { return chol_l.transpose() * v; }
};

/// Evaluates metric, structure fields, and curvature at p.
/// Throws DegenerateMetricError if g is not positive definite at p.
LocalGeometry local_geometry(const ManifoldModel& model, const Point& p);

ConnectionCoefficients christoffel(const ManifoldModel& model, const Point& p);
CurvatureData riemann(const ManifoldModel& model, const Point& p);

/// [A, B]^i = A^j d_j B^i - B^j d_j A^i.
VectorXd lie_bracket(const VectorField& a, const VectorField& b, const Point& p);

struct Jet1 {
  VectorXd value;
  MatrixXd jacobian;  // J(i,k) = d_k V^i
};
Jet1 vector_jet(const VectorField& field, const VectorXd& x);

/// Antisymmetric matrix (d eta_a)_ij = factor * (d_i eta_j - d_j eta_i).
MatrixXd exterior_derivative_1form(const ManifoldModel& model, int eta_index, const Point& p,
                                   Convention convention);
MatrixXd exterior_derivative(const MatrixXd& eta_jacobian, Convention convention);

/// Uniform points in the model's domain box; deterministic for a seed.
std::vector<Point> sample_points(const ManifoldModel& model, int count, std::uint64_t seed);

/// Standard-normal coordinate vectors; deterministic for a seed.
std::vector<VectorXd> sample_vectors(int dim, int count, std::uint64_t seed);

// Metric operator norms at a point (largest singular value in an orthonormal frame).
double norm_11(const LocalGeometry& geo, const MatrixXd& a);  // (1,1) tensor
double norm_02(const LocalGeometry& geo, const MatrixXd& b);  // (0,2) tensor
double norm_vec(const LocalGeometry& geo, const VectorXd& v);
double norm_covec(const LocalGeometry& geo, const VectorXd& w);

}  // namespace fkm
