#include <doctest.h>

#include <cmath>

#include "fkm/deform.hpp"
#include "fkm/nullity.hpp"
#include "support.hpp"

using namespace fkm;
using fkm::test::model_of;
using fkm::test::points_of;
using fkm::test::vectors_of;

namespace {

NullityFit fit_of(const ManifoldModel& m) { return fit_nullity(m, points_of(m), vectors_of(m)); }

}  // namespace

TEST_CASE("nullity fit recovers closed-form constants") {
  struct Case {
    const char* key;
    double kappa, mu;
  };
  for (const Case c : {Case{"flat-contact-r3", 0.0, 0.0}, Case{"flat-contact-r3:deformed:0.5", -3.0, -2.0},
                       Case{"flat-contact-r3:deformed:0.75", -7.0 / 9.0, -2.0 / 3.0},
                       Case{"flat-contact-r3:deformed:2", 0.75, 1.0},
                       Case{"flat-contact-r3:deformed:3", 8.0 / 9.0, 4.0 / 3.0}}) {
    CAPTURE(std::string(c.key));
    const NullityFit f = fit_of(model_of(c.key));
    CHECK(f.mu_determined);
    CHECK(std::abs(f.kappa - c.kappa) < 1e-10);
    CHECK(std::abs(f.mu - c.mu) < 1e-10);
    CHECK(f.residual < 1e-10);
  }
}

TEST_CASE("S-space-forms have kappa = 1 and undetermined mu") {
  for (const char* key : {"s-space-form:1,1", "s-space-form:2,2", "s-space-form:2,2:deformed:3"}) {
    CAPTURE(std::string(key));
    const NullityFit f = fit_of(model_of(key));
    CHECK(f.kappa == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(f.mu_determined);
    CHECK(f.mu_or_zero() == 0.0);
  }
}

TEST_CASE("fit refuses samples where every eta term vanishes") {
  const ManifoldModel m = model_of("flat-contact-r3");
  Point p;
  p.coords = VectorXd::Zero(3);  // z = 0: eta is a multiple of dx
  CHECK_THROWS_AS(fit_nullity(m, {p}, {VectorXd::Unit(3, 1), VectorXd::Unit(3, 2)}), InsufficientSampleError);
}

TEST_CASE("R(xi, X)Y identity holds for the fit and fails for a wrong kappa") {
  const ManifoldModel m = model_of("flat-contact-r3:deformed:2");
  NullityFit f = fit_of(m);
  CHECK(verify_r_xi(m, f, points_of(m), vectors_of(m)) < 1e-10);
  f.kappa += 0.1;
  CHECK(verify_r_xi(m, f, points_of(m), vectors_of(m)) > 1e-2);
}

TEST_CASE("spectrum of h on L") {
  struct Case {
    const char* key;
    double lambda;
  };
  for (const Case c : {Case{"flat-contact-r3", 1.0}, Case{"flat-contact-r3:deformed:2", 0.5},
                       Case{"flat-contact-r3:deformed:0.5", 2.0}}) {
    CAPTURE(std::string(c.key));
    const ManifoldModel m = model_of(c.key);
    const NullityFit f = fit_of(m);
    const SpectrumReport sp = h_spectrum(m, f, points_of(m)[0]);
    CHECK_FALSE(sp.s_case);
    CHECK(sp.lambda == doctest::Approx(c.lambda).epsilon(1e-10));
    CHECK(sp.eigenvalues[0] == doctest::Approx(-c.lambda).epsilon(1e-10));
    CHECK(sp.eigenvalues[1] == doctest::Approx(c.lambda).epsilon(1e-10));
    CHECK(sp.swap_residual < 1e-10);
    CHECK(sp.projector_residual < 1e-10);
  }

  const ManifoldModel s = model_of("s-space-form:2,2");
  const SpectrumReport sp = h_spectrum(s, fit_of(s), points_of(s)[0]);
  CHECK(sp.s_case);
  CHECK(sp.eigenvalues.norm() == 0.0);
}

TEST_CASE("h_spectrum rejects kappa = 1 with nonzero h") {
  const ManifoldModel m = model_of("flat-contact-r3");
  NullityFit f = fit_of(m);
  f.kappa = 1.0;
  CHECK_THROWS_AS(h_spectrum(m, f, points_of(m)[0]), InconsistencyError);
}

TEST_CASE("Rf identity and Ricci model") {
  for (const CatalogEntry& e : catalog_list()) {
    CAPTURE(e.key);
    const NullityFit f = fit_of(e.model);
    const RfResidual rf = check_rf_identity(e.model, f, points_of(e.model), vectors_of(e.model));
    CHECK(rf.residual < 1e-8);
    CHECK(rf.xi_branch_residual < 1e-8);
    if (f.kappa < 1.0 - 1e-6)
      CHECK(check_ricci_model(e.model, f, points_of(e.model)) < 1e-8);
    else
      CHECK_THROWS_AS(check_ricci_model(e.model, f, points_of(e.model)), PreconditionError);
  }
}

TEST_CASE("f-sectional curvature values and section validation") {
  const ManifoldModel s = model_of("s-space-form:1,1");
  const LocalGeometry geo = local_geometry(s, points_of(s)[0]);
  // d/dx_1 has length 1/2 plus an eta component; project to L with -f^2 and normalize.
  VectorXd x = -(geo.f * geo.f) * VectorXd::Unit(3, 0);
  x /= std::sqrt(geo.inner(x, x));
  CHECK(f_sectional(geo, x) == doctest::Approx(-3.0).epsilon(1e-10));
  CHECK_THROWS_AS(f_sectional(geo, 2.0 * x), InvalidSectionError);
  CHECK_THROWS_AS(f_sectional(geo, geo.xi[0]), InvalidSectionError);

  for (const VectorXd& v : sample_sections(geo, 20, 3)) {
    CHECK(geo.inner(v, v) == doctest::Approx(1.0));
    CHECK(std::abs(geo.eta[0].dot(v)) < 1e-12);
  }
}

TEST_CASE("H constancy, curvature model and space-form criterion") {
  const ManifoldModel half = model_of("flat-contact-r3:deformed:0.5");
  const NullityFit fh = fit_of(half);
  const SpaceFormReport rh = sample_H_constancy(half, points_of(half, 10), 100, 5);
  CHECK(rh.H_spread < 1e-8);
  CHECK(rh.H_mean == doctest::Approx(5.0).epsilon(1e-10));
  const SpaceFormVerdict vh = space_form_criterion(fh, rh);
  CHECK(vh.applicable);
  CHECK(vh.mu_condition);
  CHECK(vh.predicted_H == doctest::Approx(5.0));
  CHECK_FALSE(vh.predicts_space_form.has_value());
  // For n = 1 mu = kappa + 1 is not a criterion; the curvature model is measured anyway.
  CHECK(check_curvature_model(half, fh, rh.H_mean, points_of(half), vectors_of(half)) < 1e-8);

  const ManifoldModel s = model_of("s-space-form:2,2");
  const NullityFit fs = fit_of(s);
  const SpaceFormReport rs = sample_H_constancy(s, points_of(s, 10), 100, 5);
  CHECK(rs.H_mean == doctest::Approx(-6.0).epsilon(1e-10));
  CHECK(check_curvature_model(s, fs, rs.H_mean, points_of(s), vectors_of(s)) < 1e-8);
  CHECK(check_curvature_model(s, fs, rs.H_mean + 0.5, points_of(s), vectors_of(s)) > 1e-2);
  CHECK_FALSE(space_form_criterion(fs, rs).applicable);

  // n > 1 bookkeeping on a synthetic fit: mu = kappa + 1 forces H = -s(2 kappa + 1).
  NullityFit synthetic;
  synthetic.kappa = 0.0;
  synthetic.mu = 1.0;
  SpaceFormReport rep;
  rep.n = 2;
  rep.s = 1;
  rep.H_mean = -1.0;
  const SpaceFormVerdict v = space_form_criterion(synthetic, rep);
  REQUIRE(v.predicts_space_form.has_value());
  CHECK(*v.predicts_space_form);
  CHECK(v.predicted_H == -1.0);
  CHECK(v.H_gap == 0.0);
  synthetic.mu = 0.5;
  CHECK_FALSE(*space_form_criterion(synthetic, rep).predicts_space_form);
}

TEST_CASE("splitting lemma on the L+/L- decomposition") {
  for (const char* key : {"flat-contact-r3", "flat-contact-r3:deformed:0.75", "flat-contact-r3:deformed:3"}) {
    CAPTURE(std::string(key));
    const ManifoldModel m = model_of(key);
    const NullityFit f = fit_of(m);
    for (const Point& p : points_of(m, 5)) CHECK(check_splitting_lemma(m, f, p, 50, 1) < 1e-8);
  }
  const ManifoldModel s = model_of("s-space-form:1,1");
  CHECK_THROWS_AS(check_splitting_lemma(s, fit_of(s), points_of(s)[0], 10, 1), PreconditionError);
}

TEST_CASE("generalized S-space-form fit") {
  const ManifoldModel s = model_of("s-space-form:2,2");
  const GssfFit g = fit_gssf(s, points_of(s), vectors_of(s));
  CHECK(g.residual < 1e-8);
  CHECK(g.spread < 1e-8);
  CHECK(g.conditions_hold);
  // H = -6, s = 2: F1 = (H + 3s)/4 = 0, F2 = (H - s)/4 = -2
  const double expected[] = {0.0, -2.0, -1.0, -1.0, -1.0, -1.0, -2.0};
  for (int k = 0; k < 7; ++k) CHECK(std::abs(g.F[k] - expected[k]) < 1e-8);
  CHECK(g.kappa_implied == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_gssf(model_of("s-space-form:2,1"), points_of(model_of("s-space-form:2,1")),
                           vectors_of(model_of("s-space-form:2,1"))),
                  NotApplicableError);
}

TEST_CASE("trans-S fit") {
  for (const char* key : {"s-space-form:1,1", "s-space-form:2,2"}) {
    CAPTURE(std::string(key));
    const ManifoldModel m = model_of(key);
    const TransSFit t = fit_trans_s(m, points_of(m), vectors_of(m));
    CHECK(t.residual < 1e-8);
    CHECK(t.k_contact);
    for (double a : t.alpha) CHECK(a == doctest::Approx(1.0).epsilon(1e-10));
    for (double b : t.beta) CHECK(std::abs(b) < 1e-10);
    REQUIRE(t.t421_residual.has_value());
    CHECK(*t.t421_residual < 1e-8);
  }
  const ManifoldModel flat = model_of("flat-contact-r3");
  CHECK(fit_trans_s(flat, points_of(flat), vectors_of(flat)).residual > 1e-2);
}
