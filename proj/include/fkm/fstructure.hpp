#pragma once

// Structure tensors of a metric f-manifold and the axiom battery.

#include <optional>
#include <string>
#include <vector>

#include "fkm/geometry.hpp"

namespace fkm {

struct StructureTensors {
  MatrixXd f_mat;
  MatrixXd F_mat;                // F_ij = g(d_i, f d_j)
  std::vector<MatrixXd> d_eta;   // under the model's declared convention
  std::vector<MatrixXd> h_mat;   // h_a = 1/2 L_{xi_a} f
  Tensor3 nijenhuis;             // (k,i,j): ([f,f] + 2 sum xi_a (x) d eta_a)(d_i,d_j)^k
  VectorXd xi_bar;
  VectorXd eta_bar;
};

StructureTensors structure_at(const LocalGeometry& geo, Convention convention);
StructureTensors structure_at(const ManifoldModel& model, const Point& p);

/// (L_V f)^i_j for a field with value v and Jacobian dv.
MatrixXd lie_derivative_f(const LocalGeometry& geo, const VectorXd& v, const MatrixXd& dv);
/// (L_V g)_ij.
MatrixXd lie_derivative_g(const LocalGeometry& geo, const VectorXd& v, const MatrixXd& dv);

struct NamedResidual {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual <= tolerance; }
};

/// Max-over-points residuals; norms are metric norms at each point.
struct AxiomReport {
  double r_eta_xi = 0.0;     // |eta_a(xi_b) - delta_ab|
  double r_f_xi = 0.0;       // |f xi_a|
  double r_eta_f = 0.0;      // |eta_a o f|
  double r_f_squared = 0.0;  // |f^2 + I - sum eta_a (x) xi_a|
  double r_compat = 0.0;     // |g(f.,f.) - g + sum eta_a (x) eta_a|
  std::vector<double> r_contact;  // |F - d eta_a| under convention_used
  double r_normal = 0.0;
  double r_rank = 0.0;       // |rank f - 2n|
  Convention convention_used = Convention::Half;
  double tolerance = 1e-8;

  std::vector<NamedResidual> metric_f_residuals() const;
  std::vector<NamedResidual> all_residuals() const;
  bool is_metric_f_manifold() const;
  bool is_metric_f_contact() const;
  bool is_normal() const { return r_normal <= tolerance; }
};

AxiomReport check_f_axioms(const ManifoldModel& model, const std::vector<Point>& points,
                           double tolerance = 1e-8);

/// Per-structure-form residual of F - d eta_a; defaults to the model's convention.
std::vector<double> check_contact(const ManifoldModel& model, const std::vector<Point>& points,
                                  std::optional<Convention> convention = std::nullopt);

/// Max over points and coordinate pairs of |N(d_i, d_j)|.
/// The d eta term always uses the HALF factor: xi (x) d eta is invariant
/// under the PLAIN/HALF rescaling, and HALF is the factor for which S-manifolds
/// are normal.
double check_normality(const ManifoldModel& model, const std::vector<Point>& points);

/// Algebraic properties of the h-operators, max over points.
struct HPropertiesReport {
  double r_h_xi = 0.0;         // |h_a xi_b|
  double r_eta_h = 0.0;        // |eta_a o h_b|
  double r_symmetric = 0.0;    // |g h - (g h)^T|
  double r_trace = 0.0;        // |tr h|
  double r_anticommute = 0.0;  // |f h + h f|
  double r_equal = 0.0;        // |h_a - h_1|
  double max_h_norm = 0.0;
};
HPropertiesReport check_h_properties(const ManifoldModel& model, const std::vector<Point>& points);

struct KillingReport {
  std::vector<double> killing;  // per point |L_xi g|
  std::vector<double> h_norm;   // per point |h_a|
  double max_killing() const;
  double max_h_norm() const;
  /// Killing residual below tol exactly where |h_a| is below tol.
  bool agrees(double tol) const;
};
KillingReport killing_check(const ManifoldModel& model, int alpha, const std::vector<Point>& points);

}  // namespace fkm
