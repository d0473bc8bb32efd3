#include "fkm/model.hpp"

#include <stdexcept>

namespace fkm {

std::string_view to_string(Convention c) { return c == Convention::Half ? "half" : "plain"; }

Convention convention_from_string(std::string_view name) {
  if (name == "half" || name == "HALF") return Convention::Half;
  if (name == "plain" || name == "PLAIN") return Convention::Plain;
  throw std::invalid_argument("unknown exterior-derivative convention: " + std::string(name));
}

ManifoldModel::ManifoldModel(ModelSpec spec) : spec_(std::move(spec)) {
  if (spec_.n < 1 || spec_.s < 1) throw std::invalid_argument("model needs n >= 1 and s >= 1");
  if (!spec_.metric || !spec_.structure) throw std::invalid_argument("model is missing g or f");
  if (static_cast<int>(spec_.xi.size()) != spec_.s || static_cast<int>(spec_.eta.size()) != spec_.s)
    throw std::invalid_argument("model needs exactly s structure fields and 1-forms");
  for (int a = 0; a < spec_.s; ++a)
    if (!spec_.xi[a] || !spec_.eta[a]) throw std::invalid_argument("model has an empty xi/eta evaluator");
  if (spec_.domain.empty()) spec_.domain.assign(dim(), Interval{});
  if (static_cast<int>(spec_.domain.size()) != dim())
    throw std::invalid_argument("domain box must have one interval per coordinate");
}

DualVector lift(const VectorXd& x) {
  DualVector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = HyperDual(x[i]);
  return out;
}

DualVector seeded(const VectorXd& x, int i, int j) {
  DualVector out = lift(x);
  if (i >= 0) out[i].d1 = 1.0;
  if (j >= 0) out[j].d2 = 1.0;
  return out;
}

VectorXd value_of(const DualVector& v) {
  VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i].v;
  return out;
}

MatrixXd value_of(const DualMatrix& m) {
  MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).v;
  return out;
}

}  // namespace fkm
