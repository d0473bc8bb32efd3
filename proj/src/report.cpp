#include "fkm/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace fkm {

using nlohmann::json;

bool CheckReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

json records_to_json(const std::vector<CheckRecord>& records) {
  json out = json::array();
  for (const CheckRecord& c : records)
    out.push_back({{"name", c.name},
                   {"residual", c.residual},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass},
                   {"detail", c.detail}});
  return out;
}

std::vector<CheckRecord> records_from_json(const json& j) {
  std::vector<CheckRecord> out;
  for (const json& c : j)
    out.push_back({c.at("name").get<std::string>(), c.at("residual").get<double>(), c.at("tolerance").get<double>(),
                   c.at("pass").get<bool>(), c.value("detail", std::string())});
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fmt_fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

json to_json(const CheckReport& r) {
  json j;
  j["manifold"] = {{"key", r.manifold.key},   {"label", r.manifold.label}, {"n", r.manifold.n},
                   {"s", r.manifold.s},       {"dim", r.manifold.dim},     {"convention", r.manifold.convention}};
  j["checks"] = records_to_json(r.checks);
  j["classifications"] = records_to_json(r.classifications);
  j["skipped"] = json::array();
  for (const SkippedCheck& s : r.skipped) j["skipped"].push_back({{"name", s.name}, {"reason", s.reason}});

  if (r.fits)
    j["fits"] = {{"kappa", r.fits->kappa},
                 {"mu", r.fits->mu},
                 {"mu_determined", r.fits->mu_determined},
                 {"residual", r.fits->residual},
                 {"condition", r.fits->condition}};
  else
    j["fits"] = nullptr;

  if (r.spectrum)
    j["spectrum"] = {{"lambda", r.spectrum->lambda},
                     {"eigenvalue_residual", r.spectrum->eigenvalue_residual},
                     {"eigenvalues", r.spectrum->eigenvalues}};
  else
    j["spectrum"] = nullptr;

  if (r.H)
    j["H"] = {{"mean", r.H->mean},
              {"spread", r.H->spread},
              {"predicted", optional_number(r.H->predicted)},
              {"samples", r.H->samples}};
  else
    j["H"] = nullptr;

  if (r.gssf)
    j["gssf"] = {{"F", r.gssf->F},
                 {"residual", r.gssf->residual},
                 {"spread", r.gssf->spread},
                 {"condition_residuals", r.gssf->condition_residuals},
                 {"conditions_hold", r.gssf->conditions_hold},
                 {"kappa_implied", r.gssf->kappa_implied}};
  else
    j["gssf"] = nullptr;

  if (r.trans_s)
    j["trans_s"] = {{"alpha", r.trans_s->alpha},
                    {"beta", r.trans_s->beta},
                    {"residual", r.trans_s->residual},
                    {"k_contact", r.trans_s->k_contact},
                    {"t421_residual", optional_number(r.trans_s->t421_residual)}};
  else
    j["trans_s"] = nullptr;

  j["verdicts"] = {{"is_metric_f_contact", r.verdicts.is_metric_f_contact},
                   {"is_normal", r.verdicts.is_normal},
                   {"is_s_manifold", r.verdicts.is_s_manifold},
                   {"is_space_form_candidate", r.verdicts.is_space_form_candidate}};
  j["diagnostics"] = r.diagnostics;
  j["all_pass"] = r.all_pass();
  j["seed"] = r.seed;
  j["wall_time"] = r.wall_time;
  return j;
}

CheckReport report_from_json(const json& j) {
  CheckReport r;
  const json& m = j.at("manifold");
  r.manifold = {m.at("key").get<std::string>(), m.at("label").get<std::string>(), m.at("n").get<int>(),
                m.at("s").get<int>(),           m.at("dim").get<int>(),           m.at("convention").get<std::string>()};
  r.checks = records_from_json(j.at("checks"));
  r.classifications = records_from_json(j.at("classifications"));
  for (const json& s : j.at("skipped"))
    r.skipped.push_back({s.at("name").get<std::string>(), s.at("reason").get<std::string>()});

  if (const json& f = j.at("fits"); !f.is_null())
    r.fits = FitSummary{f.at("kappa").get<double>(), f.at("mu").get<double>(), f.at("mu_determined").get<bool>(),
                        f.at("residual").get<double>(), f.at("condition").get<double>()};
  if (const json& s = j.at("spectrum"); !s.is_null())
    r.spectrum = SpectrumSummary{s.at("lambda").get<double>(), s.at("eigenvalue_residual").get<double>(),
                                 s.at("eigenvalues").get<std::vector<double>>()};
  if (const json& h = j.at("H"); !h.is_null())
    r.H = HSummary{h.at("mean").get<double>(), h.at("spread").get<double>(), read_optional(h, "predicted"),
                   h.at("samples").get<int>()};
  if (const json& g = j.at("gssf"); !g.is_null())
    r.gssf = GssfSummary{g.at("F").get<std::vector<double>>(),
                         g.at("residual").get<double>(),
                         g.at("spread").get<double>(),
                         g.at("condition_residuals").get<std::vector<double>>(),
                         g.at("conditions_hold").get<bool>(),
                         g.at("kappa_implied").get<double>()};
  if (const json& t = j.at("trans_s"); !t.is_null())
    r.trans_s = TransSSummary{t.at("alpha").get<std::vector<double>>(), t.at("beta").get<std::vector<double>>(),
                              t.at("residual").get<double>(), t.at("k_contact").get<bool>(),
                              read_optional(t, "t421_residual")};

  const json& v = j.at("verdicts");
  r.verdicts = {v.at("is_metric_f_contact").get<bool>(), v.at("is_normal").get<bool>(),
                v.at("is_s_manifold").get<bool>(), v.at("is_space_form_candidate").get<bool>()};
  r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.wall_time = j.at("wall_time").get<double>();
  return r;
}

std::string emit_report(const CheckReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(r).dump(2) + "\n";

  std::ostringstream out;
  out << "manifold " << r.manifold.key << "  n=" << r.manifold.n << " s=" << r.manifold.s
      << " dim=" << r.manifold.dim << " convention=" << r.manifold.convention << "\n";
  out << "seed " << r.seed << "\n\n";

  std::size_t width = 8;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& c : r.classifications) width = std::max(width, c.name.size());
  auto line = [&](const CheckRecord& c, const char* yes, const char* no) {
    out << (c.pass ? yes : no) << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << "residual "
        << fmt(c.residual) << "  tol " << fmt(c.tolerance);
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  };
  for (const auto& c : r.checks) line(c, "PASS", "FAIL");
  for (const auto& s : r.skipped) out << "SKIP  " << s.name << "  " << s.reason << "\n";
  if (!r.classifications.empty()) {
    out << "\nproperties\n";
    for (const auto& c : r.classifications) line(c, "yes ", "no  ");
  }

  out << "\n";
  if (r.fits) {
    out << "kappa " << fmt_fixed(r.fits->kappa) << "  mu ";
    out << (r.fits->mu_determined ? fmt_fixed(r.fits->mu) : std::string("undetermined"));
    out << "  fit residual " << fmt(r.fits->residual) << "\n";
  }
  if (r.spectrum)
    out << "lambda " << fmt_fixed(r.spectrum->lambda) << "  eigenvalue residual "
        << fmt(r.spectrum->eigenvalue_residual) << "\n";
  if (r.H) {
    out << "H mean " << fmt_fixed(r.H->mean) << "  spread " << fmt(r.H->spread);
    if (r.H->predicted) out << "  predicted " << fmt_fixed(*r.H->predicted);
    out << "\n";
  }
  if (r.trans_s) {
    out << "trans-S residual " << fmt(r.trans_s->residual) << "  alpha";
    for (double a : r.trans_s->alpha) out << " " << fmt_fixed(a);
    out << "  beta";
    for (double b : r.trans_s->beta) out << " " << fmt_fixed(b);
    out << "\n";
  }
  if (r.gssf) {
    out << "gssf residual " << fmt(r.gssf->residual) << "  F";
    for (double f : r.gssf->F) out << " " << fmt_fixed(f);
    out << "\n";
  }
  out << "metric f-contact " << (r.verdicts.is_metric_f_contact ? "yes" : "no") << "  normal "
      << (r.verdicts.is_normal ? "yes" : "no") << "  S-manifold " << (r.verdicts.is_s_manifold ? "yes" : "no")
      << "  space-form candidate " << (r.verdicts.is_space_form_candidate ? "yes" : "no") << "\n";
  for (const auto& d : r.diagnostics) out << "note: " << d << "\n";
  out << (r.all_pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace fkm
