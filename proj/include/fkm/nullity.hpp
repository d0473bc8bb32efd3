#pragma once

// The (kappa, mu)-nullity condition
//   R(X,Y) xi_a = kappa (eta(X) f^2 Y - eta(Y) f^2 X) + mu (eta(Y) h_a X - eta(X) h_a Y),
// eta = eta_1 + ... + eta_s, and everything built on it: spectra of h, the
// f-sectional curvature, the curvature and Ricci models, and the
// generalized-S-space-form and trans-S fits.
//
// Vector samples are coordinate-component vectors; operations that need pairs
// or triples take consecutive samples cyclically, (v_i, v_{i+1}[, v_{i+2}]).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fkm/fstructure.hpp"

namespace fkm {

struct NullityFit {
  double kappa = 0.0;
  double mu = 0.0;
  bool mu_determined = true;
  double residual = 0.0;
  double lambda = 0.0;  // sqrt(1 - kappa) when kappa < 1
  double condition = 0.0;
  int rows = 0;
  /// mu if determined, otherwise 0 (its terms vanish with h).
  double mu_or_zero() const { return mu_determined ? mu : 0.0; }
};

/// Least-squares (kappa, mu) over all (point, pair, alpha) equations.
/// mu is reported as undetermined when its column RMS is below mu_tolerance.
/// Throws InsufficientSampleError when every eta-term vanishes.
NullityFit fit_nullity(const ManifoldModel& model, const std::vector<Point>& points,
                       const std::vector<VectorXd>& vectors, double mu_tolerance = 1e-8);

/// Residual of R(xi_a,X)Y = kappa(eta(Y) f^2 X - g(X,f^2 Y) xi) + mu(g(X,hY) xi - eta(Y) hX).
double verify_r_xi(const ManifoldModel& model, const NullityFit& fit, const std::vector<Point>& points,
                   const std::vector<VectorXd>& vectors);

struct SpectrumReport {
  bool s_case = false;  // kappa = 1: h vanishes and there is no split
  double lambda = 0.0;
  VectorXd eigenvalues;  // h restricted to L, ascending
  MatrixXd P_L;          // -f^2
  MatrixXd P_plus;
  MatrixXd P_minus;
  std::vector<double> equality_residual;  // |h_a - h_1|
  double eigenvalue_residual = 0.0;       // against (-lambda x n, +lambda x n)
  double swap_residual = 0.0;             // |f P_+ - P_- f|
  double projector_residual = 0.0;        // |P_+ + P_- - P_L| + |P_+^2 - P_+|
};

/// Throws InconsistencyError when kappa >= 1 but h does not vanish.
SpectrumReport h_spectrum(const ManifoldModel& model, const NullityFit& fit, const Point& p,
                          double tolerance = 1e-6);

struct RfResidual {
  double residual = 0.0;
  double xi_branch_residual = 0.0;  // Z = xi_b
};
RfResidual check_rf_identity(const ManifoldModel& model, const NullityFit& fit, const std::vector<Point>& points,
                             const std::vector<VectorXd>& vectors);

/// Q = s(2(1-n) + n mu) f^2 + s(2(n-1) + mu) h + 2 n kappa eta (x) xi.
/// Throws PreconditionError for kappa >= 1.
double check_ricci_model(const ManifoldModel& model, const NullityFit& fit, const std::vector<Point>& points);

/// K(X, fX) = g(R(X,fX)fX, X) for a unit X in L.
/// Throws InvalidSectionError when X is not a unit vector of L.
double f_sectional(const LocalGeometry& geo, const VectorXd& x, double tolerance = 1e-6);
double f_sectional(const ManifoldModel& model, const Point& p, const VectorXd& x, double tolerance = 1e-6);

/// Unit vectors of L_p: Gaussian coordinate vectors projected by -f^2 and
/// normalized, rejecting projections shorter than 1e-3.
std::vector<VectorXd> sample_sections(const LocalGeometry& geo, int count, std::uint64_t seed);

struct SpaceFormReport {
  int n = 1;
  int s = 1;
  std::vector<double> H_samples;
  double H_mean = 0.0;
  double H_spread = 0.0;  // max - min over all sections and points
  std::optional<double> predicted_H;
  std::optional<double> model_residual;
};

SpaceFormReport sample_H_constancy(const ManifoldModel& model, const std::vector<Point>& points,
                                   int sections_per_point, std::uint64_t seed);

/// Relative deviation of 4 R(X,Y)Z from the space-form curvature model with
/// f-sectional curvature H.
double check_curvature_model(const ManifoldModel& model, const NullityFit& fit, double H,
                             const std::vector<Point>& points, const std::vector<VectorXd>& vectors);

struct SpaceFormVerdict {
  bool applicable = false;  // false for kappa >= 1
  bool n_greater_than_one = false;
  double mu_gap = 0.0;         // |mu - (kappa + 1)|
  double predicted_H = 0.0;    // -s(2 kappa + 1)
  double H_gap = 0.0;          // |H_mean - predicted_H|
  double h_relation_residual = 0.0;  // |(n+1) H - s(n - 1 - 2 mu n - 2 kappa)|
  bool mu_condition = false;   // mu = kappa + 1
  bool constant_H = false;     // measured
  /// For n > 1 the space-form property is equivalent to mu = kappa + 1.
  std::optional<bool> predicts_space_form;
  std::string note;
};

SpaceFormVerdict space_form_criterion(const NullityFit& fit, const SpaceFormReport& report,
                                      double tolerance = 1e-6);

/// max |H(X) - (-s(kappa+mu) + 4s(kappa-mu+1)(|X+|^2 |X-|^2 - g(X+, fX-)^2))|.
/// Throws PreconditionError for kappa >= 1.
double check_splitting_lemma(const ManifoldModel& model, const NullityFit& fit, const Point& p,
                             int section_samples, std::uint64_t seed);

struct GssfFit {
  std::vector<double> F;                 // F_1..F_7, mean over points
  std::vector<std::vector<double>> F_per_point;
  double residual = 0.0;
  double spread = 0.0;                   // max over k of the range of F_k across points
  std::vector<double> condition_residuals;  // |(F1-F3)+F5|, |(F1-F3)+F6|, |(F1-F3)-(F4-F7)|
  double condition_number = 0.0;
  bool conditions_hold = false;
  double kappa_implied = 0.0;   // F1 - F3
  double kappa_gap = 0.0;       // against fit_nullity
  std::optional<double> mu_gap; // |mu|, when fit_nullity determines it
};

/// Seven-function generalized-S-space-form ansatz, fitted pointwise. s = 2 only.
GssfFit fit_gssf(const ManifoldModel& model, const std::vector<Point>& points, const std::vector<VectorXd>& vectors,
                 double tolerance = 1e-6);

struct TransSFit {
  std::vector<double> alpha;  // mean over points
  std::vector<double> beta;
  std::vector<std::vector<double>> alpha_per_point;
  std::vector<std::vector<double>> beta_per_point;
  double residual = 0.0;
  double condition_number = 0.0;
  bool k_contact = false;  // every h_a vanished at the tested points
  std::optional<double> t421_residual;   // R(X, xi_a) Y + (nabla_X f) Y
  std::optional<double> beta_max;        // nullity forces beta = 0
};

TransSFit fit_trans_s(const ManifoldModel& model, const std::vector<Point>& points,
                      const std::vector<VectorXd>& vectors, double tolerance = 1e-8);

}  // namespace fkm
