#include "fkm/catalog.hpp"

#include <charconv>
#include <cmath>

#include "fkm/deform.hpp"

namespace fkm {

ManifoldModel build_s_space_form(int n, int s) {
  if (n < 1 || s < 1) throw std::invalid_argument("s-space-form needs n >= 1 and s >= 1");
  const int d = 2 * n + s;
  ModelSpec spec;
  spec.n = n;
  spec.s = s;
  spec.convention = Convention::Half;
  spec.label = "s-space-form:" + std::to_string(n) + "," + std::to_string(s);

  auto eta = [n, d](int alpha, const DualVector& x) {
    DualVector e = DualVector::Zero(d);
    for (int i = 0; i < n; ++i) e[i] = x[n + i] * -0.5;
    e[2 * n + alpha] = HyperDual(0.5);
    return e;
  };
  spec.metric = [n, s, d, eta](const DualVector& x) {
    DualMatrix g = DualMatrix::Zero(d, d);
    for (int a = 0; a < s; ++a) {
      const DualVector e = eta(a, x);
      g += e * e.transpose();
    }
    for (int i = 0; i < 2 * n; ++i) g(i, i) += HyperDual(0.25);
    return g;
  };
  spec.structure = [n, s, d](const DualVector& x) {
    DualMatrix f = DualMatrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
      f(n + i, i) = HyperDual(-1.0);
      f(i, n + i) = HyperDual(1.0);
      for (int a = 0; a < s; ++a) f(2 * n + a, n + i) = x[n + i];
    }
    return f;
  };
  for (int a = 0; a < s; ++a) {
    spec.xi.push_back([n, d, a](const DualVector&) {
      DualVector v = DualVector::Zero(d);
      v[2 * n + a] = HyperDual(2.0);
      return v;
    });
    spec.eta.push_back([eta, a](const DualVector& x) { return eta(a, x); });
  }
  return ManifoldModel(std::move(spec));
}

namespace {

// f = d/dz (x) e^b - e (x) dz in the Euclidean frame {xi^, e, d/dz}.
DualMatrix flat_structure(const DualVector& x) {
  const HyperDual c = cos(x[2]), sn = sin(x[2]);
  DualMatrix f = DualMatrix::Zero(3, 3);
  f(0, 2) = sn;
  f(1, 2) = -c;
  f(2, 0) = -sn;
  f(2, 1) = c;
  return f;
}

ManifoldModel flat_model(double metric_scale, double xi_scale, double eta_scale, Convention conv,
                         std::string label) {
  ModelSpec spec;
  spec.n = 1;
  spec.s = 1;
  spec.convention = conv;
  spec.label = std::move(label);
  spec.metric = [metric_scale](const DualVector&) {
    DualMatrix g = DualMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) g(i, i) = HyperDual(metric_scale);
    return g;
  };
  spec.structure = flat_structure;
  spec.xi.push_back([xi_scale](const DualVector& x) {
    DualVector v = DualVector::Zero(3);
    v[0] = cos(x[2]) * xi_scale;
    v[1] = sin(x[2]) * xi_scale;
    return v;
  });
  spec.eta.push_back([eta_scale](const DualVector& x) {
    DualVector v = DualVector::Zero(3);
    v[0] = cos(x[2]) * eta_scale;
    v[1] = sin(x[2]) * eta_scale;
    return v;
  });
  return ManifoldModel(std::move(spec));
}

constexpr std::string_view kFlat = "flat-contact-r3";
constexpr std::string_view kFlatPlain = "flat-contact-r3:plain";
constexpr std::string_view kSForm = "s-space-form:";
constexpr std::string_view kDeformed = ":deformed:";

double parse_double(std::string_view text, const std::string& key) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) throw UnknownKeyError("unknown catalog key: " + key);
  return value;
}

int parse_int(std::string_view text, const std::string& key) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) throw UnknownKeyError("unknown catalog key: " + key);
  return value;
}

}  // namespace

ManifoldModel build_flat_contact_r3() { return flat_model(0.25, 2.0, 0.5, Convention::Half, std::string(kFlat)); }

ManifoldModel build_flat_contact_r3_plain() {
  return flat_model(1.0, 1.0, 1.0, Convention::Plain, std::string(kFlatPlain));
}

CatalogEntry catalog_get(const std::string& key) {
  std::string_view base = key;
  std::optional<double> a;
  if (const auto pos = base.find(kDeformed); pos != std::string_view::npos) {
    a = parse_double(base.substr(pos + kDeformed.size()), key);
    if (!(*a > 0.0)) throw UnknownKeyError("deformation parameter must be positive in key: " + key);
    base = base.substr(0, pos);
  }

  std::optional<ManifoldModel> model;
  std::optional<ExpectedValues> expected;
  int n = 1, s = 1;
  if (base == kFlat) {
    model = build_flat_contact_r3();
    if (a) {
      const NullityPrediction p = predict_deformed_nullity({*a}, 1);
      expected = ExpectedValues{p.kappa, p.mu, p.H, "D-homothetic deformation of a flat base"};
    } else {
      expected = ExpectedValues{0.0, 0.0, 0.0, "flat"};
    }
  } else if (base == kFlatPlain) {
    model = build_flat_contact_r3_plain();
    // The PLAIN structure is the HALF one rescaled by g -> 4g, so kappa, mu
    // and H pick up factors 1/4, 1/2 and 1/4.
    if (a) {
      const NullityPrediction p = predict_deformed_nullity({*a}, 1);
      expected = ExpectedValues{p.kappa / 4.0, p.mu / 2.0, p.H / 4.0, "rescaled HALF prediction"};
    } else {
      expected = ExpectedValues{0.0, 0.0, 0.0, "flat"};
    }
  } else if (base.substr(0, kSForm.size()) == kSForm) {
    const std::string_view dims = base.substr(kSForm.size());
    const auto comma = dims.find(',');
    if (comma == std::string_view::npos) throw UnknownKeyError("unknown catalog key: " + key);
    n = parse_int(dims.substr(0, comma), key);
    s = parse_int(dims.substr(comma + 1), key);
    if (n < 1 || s < 1) throw UnknownKeyError("s-space-form needs n, s >= 1: " + key);
    model = build_s_space_form(n, s);
    // h = 0 survives the deformation and this model is D-homothetically rigid.
    expected = ExpectedValues{1.0, std::nullopt, -3.0 * s, "S-manifold (kappa = 1, mu undetermined)"};
  } else {
    throw UnknownKeyError("unknown catalog key: " + key);
  }

  if (a) model = d_deform(*model, {*a});
  return CatalogEntry{key, model->n(), model->s(), model->convention(), expected, *model};
}

std::vector<CatalogEntry> catalog_list() {
  static const char* const keys[] = {
      "flat-contact-r3",
      "s-space-form:1,1",
      "s-space-form:2,1",
      "s-space-form:1,2",
      "s-space-form:2,2",
      "flat-contact-r3:deformed:0.5",
      "flat-contact-r3:deformed:0.75",
      "flat-contact-r3:deformed:2",
      "flat-contact-r3:deformed:3",
      "s-space-form:2,2:deformed:3",
  };
  std::vector<CatalogEntry> out;
  for (const char* k : keys) out.push_back(catalog_get(k));
  return out;
}

std::vector<std::string> catalog_auxiliary_keys() { return {std::string(kFlatPlain)}; }

}  // namespace fkm
