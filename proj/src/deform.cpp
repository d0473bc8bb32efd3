#include "fkm/deform.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace fkm {

std::string format_parameter(double a) {
  std::ostringstream os;
  os.precision(12);
  os << a;
  return os.str();
}

ManifoldModel d_deform(const ManifoldModel& model, DeformationParams params) {
  const double a = params.a;
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("D-homothetic deformation needs a > 0");
  auto base = std::make_shared<const ManifoldModel>(model);

  ModelSpec spec;
  spec.n = model.n();
  spec.s = model.s();
  spec.domain = model.domain();
  spec.convention = model.convention();  // F and d eta both scale by a
  spec.label = model.label() + ":deformed:" + format_parameter(a);
  spec.metric = [base, a](const DualVector& x) {
    DualMatrix g = base->metric(x) * a;
    for (int al = 0; al < base->s(); ++al) {
      const DualVector eta = base->eta(al, x);
      g += (eta * eta.transpose()) * (a * (a - 1.0));
    }
    return g;
  };
  spec.structure = [base](const DualVector& x) { return base->structure(x); };
  for (int al = 0; al < model.s(); ++al) {
    spec.xi.push_back([base, a, al](const DualVector& x) { return DualVector(base->xi(al, x) / a); });
    spec.eta.push_back([base, a, al](const DualVector& x) { return DualVector(base->eta(al, x) * a); });
  }
  return ManifoldModel(std::move(spec));
}

NullityPrediction predict_deformed_nullity(DeformationParams params, int s) {
  const double a = params.a;
  if (!(a > 0.0)) throw std::invalid_argument("D-homothetic deformation needs a > 0");
  NullityPrediction out;
  out.kappa = (a * a - 1.0) / (a * a);
  out.mu = 2.0 * (a - 1.0) / a;
  out.H = -s * (3.0 * a * a - 2.0 * a - 1.0) / (a * a);
  out.space_form = std::abs(a - 0.5) < 1e-12;
  return out;
}

ManifoldModel convention_normalize(const ManifoldModel& model) {
  if (model.convention() != Convention::Plain)
    throw PreconditionError("convention_normalize expects a PLAIN model; '" + model.label() + "' is HALF");
  auto base = std::make_shared<const ManifoldModel>(model);
  ModelSpec spec;
  spec.n = model.n();
  spec.s = model.s();
  spec.domain = model.domain();
  spec.convention = Convention::Half;
  spec.label = model.label() + ":normalized";
  spec.metric = [base](const DualVector& x) {
    DualMatrix g = base->metric(x);
    for (int al = 0; al < base->s(); ++al) {
      const DualVector eta = base->eta(al, x);
      g += (eta * eta.transpose()) * 3.0;
    }
    return g;
  };
  spec.structure = [base](const DualVector& x) { return base->structure(x); };
  for (int al = 0; al < model.s(); ++al) {
    spec.xi.push_back([base, al](const DualVector& x) { return DualVector(base->xi(al, x) * 0.5); });
    spec.eta.push_back([base, al](const DualVector& x) { return DualVector(base->eta(al, x) * 2.0); });
  }
  return ManifoldModel(std::move(spec));
}

}  // namespace fkm
