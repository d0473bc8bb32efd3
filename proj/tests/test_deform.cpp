#include <doctest.h>

#include "fkm/deform.hpp"
#include "fkm/fstructure.hpp"
#include "fkm/nullity.hpp"
#include "support.hpp"

using namespace fkm;
using fkm::test::model_of;
using fkm::test::points_of;
using fkm::test::vectors_of;

namespace {

double field_gap(const ManifoldModel& a, const ManifoldModel& b) {
  double worst = 0.0;
  for (const Point& p : points_of(a, 5)) {
    const DualVector x = lift(p.coords);
    worst = std::max(worst, (value_of(a.metric(x)) - value_of(b.metric(x))).cwiseAbs().maxCoeff());
    worst = std::max(worst, (value_of(a.structure(x)) - value_of(b.structure(x))).cwiseAbs().maxCoeff());
    for (int k = 0; k < a.s(); ++k) {
      worst = std::max(worst, (value_of(a.xi(k, x)) - value_of(b.xi(k, x))).cwiseAbs().maxCoeff());
      worst = std::max(worst, (value_of(a.eta(k, x)) - value_of(b.eta(k, x))).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("a = 1 is the identity and deformations compose multiplicatively") {
  const ManifoldModel base = model_of("s-space-form:2,1");
  CHECK(field_gap(d_deform(base, {1.0}), base) < 1e-15);
  CHECK(field_gap(d_deform(d_deform(base, {2.0}), {3.0}), d_deform(base, {6.0})) < 1e-12);
  CHECK(field_gap(d_deform(d_deform(base, {0.5}), {2.0}), base) < 1e-12);
}

TEST_CASE("deformation preserves the convention and rejects a <= 0") {
  const ManifoldModel plain = model_of("flat-contact-r3:plain");
  CHECK(d_deform(plain, {2.0}).convention() == Convention::Plain);
  CHECK_THROWS_AS(d_deform(plain, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(d_deform(plain, {-1.0}), std::invalid_argument);
  CHECK(d_deform(model_of("flat-contact-r3"), {2.0}).label() == "flat-contact-r3:deformed:2");
}

TEST_CASE("deformed models stay metric f-contact") {
  for (double a : {0.3, 1.7, 5.0}) {
    CAPTURE(a);
    const ManifoldModel m = d_deform(model_of("s-space-form:1,2"), {a});
    CHECK(check_f_axioms(m, points_of(m)).is_metric_f_contact());
  }
}

TEST_CASE("closed-form nullity of deformed flat structures") {
  const NullityPrediction p2 = predict_deformed_nullity({2.0}, 1);
  CHECK(p2.kappa == doctest::Approx(0.75));
  CHECK(p2.mu == doctest::Approx(1.0));
  CHECK(p2.H == doctest::Approx(-1.75));
  CHECK_FALSE(p2.space_form);

  const NullityPrediction ph = predict_deformed_nullity({0.5}, 1);
  CHECK(ph.kappa == doctest::Approx(-3.0));
  CHECK(ph.mu == doctest::Approx(-2.0));
  CHECK(ph.H == doctest::Approx(5.0));
  CHECK(ph.space_form);
  CHECK(predict_deformed_nullity({0.5}, 2).H == doctest::Approx(10.0));

  const NullityPrediction p1 = predict_deformed_nullity({1.0}, 1);
  CHECK(p1.kappa == 0.0);
  CHECK(p1.mu == 0.0);
}

TEST_CASE("normalizing the PLAIN flat structure lands on a deformed HALF one") {
  const ManifoldModel norm = convention_normalize(model_of("flat-contact-r3:plain"));
  CHECK(norm.convention() == Convention::Half);
  CHECK(check_f_axioms(norm, points_of(norm)).is_metric_f_contact());

  // g' = g + 3 eta (x) eta on the Euclidean structure is D_4 of the quarter-scale one.
  const NullityFit f = fit_nullity(norm, points_of(norm), vectors_of(norm));
  const NullityPrediction p = predict_deformed_nullity({4.0}, 1);
  CHECK(f.kappa == doctest::Approx(p.kappa).epsilon(1e-10));
  CHECK(f.mu == doctest::Approx(p.mu).epsilon(1e-10));
  CHECK(f.kappa == doctest::Approx(15.0 / 16.0));

  CHECK_THROWS_AS(convention_normalize(norm), PreconditionError);
  CHECK_THROWS_AS(convention_normalize(model_of("s-space-form:1,1")), PreconditionError);
}
