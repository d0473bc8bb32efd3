#include <doctest.h>

#include <set>

#include "fkm/catalog.hpp"
#include "fkm/fstructure.hpp"
#include "fkm/nullity.hpp"
#include "support.hpp"

using namespace fkm;
using fkm::test::points_of;
using fkm::test::vectors_of;

TEST_CASE("key grammar") {
  const CatalogEntry s = catalog_get("s-space-form:2,3");
  CHECK(s.n == 2);
  CHECK(s.s == 3);
  CHECK(s.model.dim() == 7);
  CHECK(s.convention == Convention::Half);

  const CatalogEntry d = catalog_get("flat-contact-r3:deformed:0.75");
  REQUIRE(d.expected.has_value());
  CHECK(d.expected->kappa == doctest::Approx(-7.0 / 9.0));
  CHECK(catalog_get("flat-contact-r3:plain").convention == Convention::Plain);

  for (const char* bad : {"nope", "s-space-form:0,1", "s-space-form:1", "s-space-form:a,b",
                          "flat-contact-r3:deformed:-1", "flat-contact-r3:deformed:x", "flat-contact-r3:extra"})
    CHECK_THROWS_AS(catalog_get(bad), UnknownKeyError);
}

TEST_CASE("listed keys are unique and resolvable") {
  std::set<std::string> keys;
  for (const CatalogEntry& e : catalog_list()) {
    CHECK(keys.insert(e.key).second);
    CHECK(catalog_get(e.key).key == e.key);
    CHECK(e.convention == Convention::Half);
  }
  CHECK(keys.count("flat-contact-r3"));
  CHECK(keys.count("s-space-form:2,2"));
  for (const std::string& k : catalog_auxiliary_keys()) CHECK_FALSE(keys.count(k));
}

TEST_CASE("expected records are reproduced by the fits") {
  for (const CatalogEntry& e : catalog_list()) {
    CAPTURE(e.key);
    REQUIRE(e.expected.has_value());
    const NullityFit f = fit_nullity(e.model, points_of(e.model), vectors_of(e.model));
    CHECK(std::abs(f.kappa - e.expected->kappa) < 1e-6);
    CHECK(f.mu_determined == e.expected->mu.has_value());
    if (e.expected->mu) CHECK(std::abs(f.mu - *e.expected->mu) < 1e-6);
    if (e.expected->H) {
      const SpaceFormReport r = sample_H_constancy(e.model, points_of(e.model, 5), 40, 3);
      CHECK(std::abs(r.H_mean - *e.expected->H) < 1e-6);
    }
  }
}

TEST_CASE("S-space-forms have f-sectional curvature -3s") {
  for (int s = 1; s <= 3; ++s) {
    const ManifoldModel m = build_s_space_form(1, s);
    const SpaceFormReport r = sample_H_constancy(m, points_of(m, 4), 30, 1);
    CHECK(r.H_mean == doctest::Approx(-3.0 * s).epsilon(1e-10));
    CHECK(r.H_spread < 1e-10);
  }
}
