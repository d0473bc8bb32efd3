#pragma once

// D-homothetic deformations
//   f~ = f,  xi~_a = xi_a / a,  eta~_a = a eta_a,
//   g~ = a g + a (a - 1) sum_a eta_a (x) eta_a
// and the closed-form nullity constants of a deformed flat (kappa = mu = 0) base.

#include "fkm/model.hpp"

namespace fkm {

struct DeformationParams {
  double a = 1.0;
};

/// Lazy composition over the base evaluators, so derivative payloads (and
/// hence curvature of g~) stay exact. Throws std::invalid_argument for a <= 0.
ManifoldModel d_deform(const ManifoldModel& model, DeformationParams params);

struct NullityPrediction {
  double kappa = 0.0;
  double mu = 0.0;
  double H = 0.0;          // f-sectional curvature, -s (kappa + mu)
  bool space_form = false; // mu == kappa + 1, which happens exactly at a = 1/2
};

/// kappa = (a^2 - 1)/a^2, mu = 2(a - 1)/a, H = -s(3a^2 - 2a - 1)/a^2.
/// Valid for a base with R(X,Y) xi_a = 0 under the HALF convention.
NullityPrediction predict_deformed_nullity(DeformationParams params, int s);

/// Rescales a PLAIN model to HALF: eta' = 2 eta, xi' = xi / 2,
/// g' = g + 3 sum eta (x) eta, f' = f. Throws PreconditionError on HALF input.
ManifoldModel convention_normalize(const ManifoldModel& model);

std::string format_parameter(double a);

}  // namespace fkm
