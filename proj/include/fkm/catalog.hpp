#pragma once

// Closed-form metric f-contact structures used as ground truth.
//
// Keys
//   s-space-form:<n>,<s>[:deformed:<a>]
//   flat-contact-r3[:deformed:<a>]
//   flat-contact-r3:plain[:deformed:<a>]

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkm/model.hpp"

namespace fkm {

class UnknownKeyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Known nullity data. mu is empty when it is not determined (h = 0).
struct ExpectedValues {
  double kappa = 0.0;
  std::optional<double> mu;
  std::optional<double> H;
  std::string provenance;
};

struct CatalogEntry {
  std::string key;
  int n = 1;
  int s = 1;
  Convention convention = Convention::Half;
  std::optional<ExpectedValues> expected;
  ManifoldModel model;
};

/// Coordinates (x_1..x_n, y_1..y_n, z_1..z_s);
/// eta_a = (dz_a - sum_i y_i dx_i)/2, xi_a = 2 d/dz_a,
/// g = sum_a eta_a (x) eta_a + (sum_i dx_i^2 + dy_i^2)/4,
/// f(d/dx_i) = -d/dy_i, f(d/dy_i) = d/dx_i + y_i sum_a d/dz_a, f(d/dz_a) = 0.
/// HALF convention; an S-manifold with f-sectional curvature -3s.
ManifoldModel build_s_space_form(int n, int s);

/// Flat R^3 with g = (dx^2 + dy^2 + dz^2)/4, eta = (cos z dx + sin z dy)/2,
/// xi = 2(cos z d/dx + sin z d/dy), and f e = d/dz, f d/dz = -e on
/// e = -sin z d/dx + cos z d/dy. HALF convention, kappa = mu = 0.
ManifoldModel build_flat_contact_r3();

/// The same frame with Euclidean g, eta = cos z dx + sin z dy and
/// xi = cos z d/dx + sin z d/dy; satisfies F = d eta under PLAIN.
ManifoldModel build_flat_contact_r3_plain();

/// HALF-convention entries that the nullity theory applies to.
std::vector<CatalogEntry> catalog_list();
/// Keys resolvable by catalog_get but not listed: the PLAIN flat structure,
/// kept for convention pinning and normalization.
std::vector<std::string> catalog_auxiliary_keys();
CatalogEntry catalog_get(const std::string& key);

}  // namespace fkm
