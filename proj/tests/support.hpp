#pragma once

#include <vector>

#include "fkm/catalog.hpp"
#include "fkm/geometry.hpp"

namespace fkm::test {

inline ManifoldModel model_of(const std::string& key) { return catalog_get(key).model; }

inline std::vector<Point> points_of(const ManifoldModel& m, int count = 20, std::uint64_t seed = 7) {
  return sample_points(m, count, seed);
}

inline std::vector<VectorXd> vectors_of(const ManifoldModel& m, int count = 200, std::uint64_t seed = 11) {
  return sample_vectors(m.dim(), count, seed);
}

inline VectorXd unit(int dim, int i) { return VectorXd::Unit(dim, i); }

}  // namespace fkm::test
