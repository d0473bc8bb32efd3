#include "fkm/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "fkm/catalog.hpp"
#include "fkm/deform.hpp"
#include "fkm/fstructure.hpp"
#include "fkm/geometry.hpp"
#include "fkm/nullity.hpp"

namespace fkm {

namespace {

constexpr double kFailed = std::numeric_limits<double>::max();

const std::vector<std::string> kDefaultChecks = {
    "axioms", "contact", "killing", "h_properties", "nullity",         "expected",
    "r_xi",   "spectrum", "rf",     "ricci",        "curvature_model", "splitting",
};

const std::vector<std::string> kKnownChecks = [] {
  auto all = kDefaultChecks;
  all.push_back("gssf");
  all.push_back("trans_s");
  return all;
}();

double finite(double v) { return std::isfinite(v) ? v : kFailed; }

CheckRecord record(std::string name, double residual, double tolerance, std::string detail = {}) {
  residual = finite(residual);
  return {std::move(name), residual, tolerance, residual <= tolerance, std::move(detail)};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Collects records for one run; checks the caller did not request are dropped.
class Assembler {
 public:
  Assembler(CheckReport& report, std::set<std::string> requested, bool explicit_request)
      : report_(report), requested_(std::move(requested)), explicit_(explicit_request) {}

  bool wants(const std::string& group) const { return requested_.count(group) > 0; }

  void add(const std::string& group, CheckRecord r) {
    if (wants(group)) report_.checks.push_back(std::move(r));
  }

  void skip(const std::string& group, const std::string& reason) {
    if (!wants(group)) return;
    if (explicit_)
      report_.checks.push_back({group, kFailed, 0.0, false, "requested but not applicable: " + reason});
    else
      report_.skipped.push_back({group, reason});
  }

  void fail(const std::string& group, const std::string& what) {
    if (!wants(group)) return;
    report_.checks.push_back({group, kFailed, 0.0, false, what});
    report_.diagnostics.push_back(group + ": " + what);
  }

  // Runs body; geometry errors turn into a failed record for the group.
  bool guarded(const std::string& group, const std::function<void()>& body) {
    try {
      body();
      return true;
    } catch (const DegenerateMetricError& e) {
      fail(group, std::string("degenerate metric: ") + e.what());
    } catch (const GeometryError& e) {
      fail(group, e.what());
    }
    return false;
  }

 private:
  CheckReport& report_;
  std::set<std::string> requested_;
  bool explicit_;
};

}  // namespace

const std::vector<std::string>& default_check_names() { return kDefaultChecks; }
const std::vector<std::string>& known_check_names() { return kKnownChecks; }

void validate(const RunConfig& c) {
  if (c.manifold_key.empty()) throw ConfigError("manifold key is required");
  if (c.points < 1) throw ConfigError("points must be >= 1");
  if (c.samples < 1) throw ConfigError("samples must be >= 1");
  if (!(c.tolerance > 0.0) || !std::isfinite(c.tolerance)) throw ConfigError("tolerance must be positive");
  if (c.deform_a && (!(*c.deform_a > 0.0) || !std::isfinite(*c.deform_a)))
    throw ConfigError("deformation parameter a must be positive");
  if (c.deform_a && c.manifold_key.find(":deformed:") != std::string::npos)
    throw ConfigError("key already carries a deformation; drop --a or the :deformed: suffix");
  if (c.checks.empty()) throw ConfigError("no checks requested");
  for (const std::string& name : c.checks) {
    if (name == "all") continue;
    if (std::find(kKnownChecks.begin(), kKnownChecks.end(), name) == kKnownChecks.end())
      throw ConfigError("unknown check: " + name);
  }
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> allowed = {"manifold", "a",      "seed", "points",    "samples",
                                                "tol",      "checks", "json", "convention"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError("unknown config field: " + it.key());

  RunConfig c;
  try {
    if (j.contains("manifold")) c.manifold_key = j.at("manifold").get<std::string>();
    if (j.contains("a") && !j.at("a").is_null()) c.deform_a = j.at("a").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("points")) c.points = j.at("points").get<int>();
    if (j.contains("samples")) c.samples = j.at("samples").get<int>();
    if (j.contains("tol")) c.tolerance = j.at("tol").get<double>();
    if (j.contains("json") && !j.at("json").is_null()) c.output_path = j.at("json").get<std::string>();
    if (j.contains("checks")) {
      const auto& v = j.at("checks");
      c.checks = v.is_string() ? std::vector<std::string>{v.get<std::string>()} : v.get<std::vector<std::string>>();
    }
    if (j.contains("convention")) {
      const std::string conv = lower(j.at("convention").get<std::string>());
      if (conv != "auto") c.convention = convention_from_string(conv);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

CheckReport run(const RunConfig& config) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();

  const std::string key =
      config.deform_a ? config.manifold_key + ":deformed:" + format_parameter(*config.deform_a) : config.manifold_key;
  const CatalogEntry entry = catalog_get(key);
  const ManifoldModel& model = entry.model;
  const double tol = config.tolerance;

  CheckReport report;
  report.seed = config.seed;
  report.manifold = {entry.key, model.label(), model.n(), model.s(), model.dim(), std::string(to_string(model.convention()))};

  const bool run_all = std::find(config.checks.begin(), config.checks.end(), "all") != config.checks.end();
  std::set<std::string> requested;
  if (run_all) requested.insert(kDefaultChecks.begin(), kDefaultChecks.end());
  for (const auto& c : config.checks)
    if (c != "all") requested.insert(c);
  Assembler out(report, requested, !run_all);

  if (model.convention() == Convention::Plain)
    report.diagnostics.push_back(
        "PLAIN convention: the nullity identities are stated for d eta(X,Y) = (X eta(Y) - Y eta(X) - eta([X,Y]))/2; "
        "normalize the model before reading spectra and curvature models");

  const std::vector<Point> points = sample_points(model, config.points, config.seed);
  const std::vector<VectorXd> vectors = sample_vectors(model.dim(), config.samples, config.seed + 1);
  const std::uint64_t section_seed = config.seed + 2;

  // axioms, contact, normality
  bool metric_f = false, contact_ok = false;
  out.guarded("axioms", [&] {
    const AxiomReport ax = check_f_axioms(model, points, tol);
    for (const NamedResidual& r : ax.metric_f_residuals()) out.add("axioms", record("axioms." + r.name, r.residual, r.tolerance));
    metric_f = ax.is_metric_f_manifold();
    report.classifications.push_back(record("normality", ax.r_normal, tol));
    report.verdicts.is_normal = ax.r_normal <= tol;
  });
  out.guarded("contact", [&] {
    const Convention conv = config.convention.value_or(model.convention());
    const std::vector<double> rc = check_contact(model, points, conv);
    contact_ok = true;
    for (std::size_t a = 0; a < rc.size(); ++a) {
      out.add("contact", record("contact." + std::to_string(a + 1), rc[a], tol, "convention " + std::string(to_string(conv))));
      contact_ok = contact_ok && rc[a] <= tol;
    }
  });
  report.verdicts.is_metric_f_contact = metric_f && contact_ok;
  report.verdicts.is_s_manifold = report.verdicts.is_metric_f_contact && report.verdicts.is_normal;

  // Killing <=> h = 0, pointwise
  out.guarded("killing", [&] {
    for (int a = 0; a < model.s(); ++a) {
      const KillingReport k = killing_check(model, a, points);
      int mismatches = 0;
      for (std::size_t i = 0; i < k.killing.size(); ++i)
        if ((k.killing[i] < tol) != (k.h_norm[i] < tol)) ++mismatches;
      out.add("killing", record("killing." + std::to_string(a + 1), mismatches, 0.0,
                                "max |L_xi g| " + num(k.max_killing()) + ", max |h| " + num(k.max_h_norm())));
    }
  });

  out.guarded("h_properties", [&] {
    const HPropertiesReport h = check_h_properties(model, points);
    out.add("h_properties", record("h.h_xi", h.r_h_xi, tol));
    out.add("h_properties", record("h.eta_h", h.r_eta_h, tol));
    out.add("h_properties", record("h.symmetric", h.r_symmetric, tol));
    out.add("h_properties", record("h.trace", h.r_trace, tol));
    out.add("h_properties", record("h.anticommute", h.r_anticommute, tol));
    out.add("h_properties", record("h.equal", h.r_equal, tol));
  });

  // nullity fit and everything that depends on it
  std::optional<NullityFit> fit;
  out.guarded("nullity", [&] {
    fit = fit_nullity(model, points, vectors);
    out.add("nullity", record("nullity.fit", fit->residual, tol, "rows " + std::to_string(fit->rows)));
    report.fits = FitSummary{fit->kappa, fit->mu, fit->mu_determined, finite(fit->residual), finite(fit->condition)};
  });
  const std::string no_fit = "nullity fit unavailable";
  const bool kappa_below_one = fit && fit->kappa < 1.0 - tol;

  // f-sectional curvature sampling feeds the expected-H check and the curvature model
  std::optional<SpaceFormReport> hs;
  try {
    hs = sample_H_constancy(model, points, config.samples, section_seed);
    HSummary summary{hs->H_mean, hs->H_spread, std::nullopt, static_cast<int>(hs->H_samples.size())};
    if (fit) {
      const SpaceFormVerdict v = space_form_criterion(*fit, *hs, tol);
      if (v.applicable && v.mu_condition) summary.predicted = v.predicted_H;
      if (v.applicable) report.classifications.push_back(record("space_form.mu_gap", v.mu_gap, tol, v.note));
    }
    report.H = summary;
    report.classifications.push_back(record("h_constancy", hs->H_spread, tol, "H mean " + num(hs->H_mean)));
    report.verdicts.is_space_form_candidate = hs->H_spread <= tol;
  } catch (const GeometryError& e) {
    report.diagnostics.push_back(std::string("f-sectional sampling: ") + e.what());
  }

  if (!entry.expected) {
    out.skip("expected", "catalog entry has no expected values");
  } else if (!fit) {
    out.skip("expected", no_fit);
  } else {
    const ExpectedValues& ev = *entry.expected;
    out.add("expected", record("expected.kappa", std::abs(fit->kappa - ev.kappa), tol, ev.provenance));
    if (ev.mu) {
      const double gap = fit->mu_determined ? std::abs(fit->mu - *ev.mu) : kFailed;
      out.add("expected", record("expected.mu", gap, tol, fit->mu_determined ? "" : "mu undetermined"));
    } else {
      out.add("expected", record("expected.mu_undetermined", fit->mu_determined ? 1.0 : 0.0, 0.0));
    }
    if (ev.H) {
      if (hs)
        out.add("expected", record("expected.H", std::abs(hs->H_mean - *ev.H), tol));
      else
        out.fail("expected", "f-sectional sampling failed");
    }
  }

  if (!fit) {
    out.skip("r_xi", no_fit);
  } else {
    out.guarded("r_xi", [&] { out.add("r_xi", record("r_xi", verify_r_xi(model, *fit, points, vectors), tol)); });
  }

  if (!fit) {
    out.skip("spectrum", no_fit);
  } else {
    out.guarded("spectrum", [&] {
      SpectrumSummary summary;
      double eig = 0.0, swap = 0.0, proj = 0.0, equal = 0.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const SpectrumReport sp = h_spectrum(model, *fit, points[i], tol);
        eig = std::max(eig, sp.eigenvalue_residual);
        swap = std::max(swap, sp.swap_residual);
        proj = std::max(proj, sp.projector_residual);
        for (double e : sp.equality_residual) equal = std::max(equal, e);
        if (i == 0) {
          summary.lambda = sp.lambda;
          summary.eigenvalues.assign(sp.eigenvalues.data(), sp.eigenvalues.data() + sp.eigenvalues.size());
        }
      }
      summary.eigenvalue_residual = eig;
      report.spectrum = summary;
      out.add("spectrum", record("spectrum.eigenvalues", eig, tol, "lambda " + num(summary.lambda)));
      if (kappa_below_one) {
        out.add("spectrum", record("spectrum.swap", swap, tol));
        out.add("spectrum", record("spectrum.projectors", proj, tol));
      }
      out.add("spectrum", record("spectrum.h_equal", equal, tol));
    });
  }

  if (!fit) {
    out.skip("rf", no_fit);
  } else {
    out.guarded("rf", [&] {
      const RfResidual rf = check_rf_identity(model, *fit, points, vectors);
      out.add("rf", record("rf", rf.residual, tol));
      out.add("rf", record("rf.xi_branch", rf.xi_branch_residual, tol));
    });
  }

  if (!fit) {
    out.skip("ricci", no_fit);
  } else if (!kappa_below_one) {
    out.skip("ricci", "kappa = 1");
  } else {
    out.guarded("ricci", [&] { out.add("ricci", record("ricci", check_ricci_model(model, *fit, points), tol)); });
  }

  if (!fit) {
    out.skip("curvature_model", no_fit);
  } else if (!hs || hs->H_spread > tol) {
    out.skip("curvature_model", "f-sectional curvature is not constant");
  } else {
    out.guarded("curvature_model", [&] {
      const double r = check_curvature_model(model, *fit, hs->H_mean, points, vectors);
      out.add("curvature_model", record("curvature_model", r, tol, "H " + num(hs->H_mean)));
    });
  }

  if (!fit) {
    out.skip("splitting", no_fit);
  } else if (!kappa_below_one) {
    out.skip("splitting", "kappa = 1");
  } else {
    out.guarded("splitting", [&] {
      double worst = 0.0;
      for (std::size_t i = 0; i < points.size(); ++i)
        worst = std::max(worst, check_splitting_lemma(model, *fit, points[i], config.samples, section_seed + i));
      out.add("splitting", record("splitting", worst, tol));
    });
  }

  // example-section fits: always reported, checks only when requested
  if (model.s() != 2) {
    out.skip("gssf", "needs s = 2");
  } else {
    try {
      const GssfFit g = fit_gssf(model, points, vectors, tol);
      report.gssf = GssfSummary{g.F, finite(g.residual), finite(g.spread), g.condition_residuals, g.conditions_hold,
                                g.kappa_implied};
      report.classifications.push_back(record("gssf.fit", std::max(g.residual, g.spread), tol));
      out.add("gssf", record("gssf.fit", g.residual, tol));
      out.add("gssf", record("gssf.spread", g.spread, tol));
    } catch (const GeometryError& e) {
      out.fail("gssf", e.what());
    }
  }

  try {
    const TransSFit t = fit_trans_s(model, points, vectors);
    report.trans_s = TransSSummary{t.alpha, t.beta, finite(t.residual), t.k_contact, t.t421_residual};
    report.classifications.push_back(record("trans_s.fit", t.residual, tol));
    out.add("trans_s", record("trans_s.fit", t.residual, tol));
    if (t.t421_residual) out.add("trans_s", record("trans_s.t421", *t.t421_residual, tol));
  } catch (const GeometryError& e) {
    out.fail("trans_s", e.what());
  }

  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace fkm
