// fkm: run metric f-contact / nullity check suites on catalog manifolds.
//
//   fkm check --manifold flat-contact-r3 --a 2 --json out.json
//   fkm fit-nullity --manifold s-space-form:2,2
//   fkm catalog list

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fkm/catalog.hpp"
#include "fkm/deform.hpp"
#include "fkm/runner.hpp"

namespace {

struct Flags {
  std::string manifold;
  std::optional<double> a;
  std::optional<int> points;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> json_path;
  std::optional<std::string> convention;
  std::optional<std::string> config;
  std::vector<std::string> checks;
  bool text = false;
};

void add_run_flags(CLI::App* cmd, Flags& f, bool with_checks) {
  cmd->add_option("--manifold,-m", f.manifold, "catalog key");
  cmd->add_option("--a", f.a, "D-homothetic deformation parameter");
  cmd->add_option("--points", f.points, "sample points (default 20)");
  cmd->add_option("--samples", f.samples, "vector samples / sections per point (default 200)");
  cmd->add_option("--seed", f.seed, "RNG seed (default 1)");
  cmd->add_option("--tol", f.tol, "tolerance (default 1e-6)");
  cmd->add_option("--json", f.json_path, "write the JSON report to this path");
  cmd->add_option("--convention", f.convention, "exterior derivative convention for the contact check")
      ->check(CLI::IsMember({"half", "plain", "auto"}, CLI::ignore_case));
  cmd->add_option("--config", f.config, "JSON config file; flags override its fields");
  cmd->add_flag("--text", f.text, "print the text table instead of JSON on stdout");
  if (with_checks) cmd->add_option("--checks", f.checks, "check names, or all")->delimiter(',');
}

fkm::RunConfig build_config(const Flags& f, std::vector<std::string> forced_checks) {
  fkm::RunConfig c;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw fkm::ConfigError("cannot read config file " + *f.config);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw fkm::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    c = fkm::config_from_json(j);
  }
  if (!f.manifold.empty()) c.manifold_key = f.manifold;
  if (f.a) c.deform_a = *f.a;
  if (f.points) c.points = *f.points;
  if (f.samples) c.samples = *f.samples;
  if (f.seed) c.seed = *f.seed;
  if (f.tol) c.tolerance = *f.tol;
  if (f.json_path) c.output_path = *f.json_path;
  if (f.convention) {
    std::string conv = *f.convention;
    for (auto& ch : conv) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    c.convention = conv == "auto" ? std::nullopt : std::optional(fkm::convention_from_string(conv));
  }
  if (!f.checks.empty()) c.checks = f.checks;
  if (!forced_checks.empty()) c.checks = std::move(forced_checks);
  return c;
}

int execute(const fkm::RunConfig& config, bool text) {
  const fkm::CheckReport report = fkm::run(config);
  const std::string json = fkm::emit_report(report, fkm::ReportFormat::Json);
  if (config.output_path) {
    std::ofstream out(*config.output_path);
    if (!out) {
      std::cerr << "error: cannot write " << *config.output_path << "\n";
      return 2;
    }
    out << json;
    std::cout << fkm::emit_report(report, fkm::ReportFormat::Text);
  } else {
    std::cout << (text ? fkm::emit_report(report, fkm::ReportFormat::Text) : json);
  }
  return report.all_pass() ? 0 : 1;
}

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::json err = {{"error", kind}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for metric f-contact manifolds and (kappa, mu)-nullity"};
  app.require_subcommand(1);

  Flags f;
  auto* check = app.add_subcommand("check", "run check suites (default: all)");
  add_run_flags(check, f, true);
  auto* fit_nullity = app.add_subcommand("fit-nullity", "fit (kappa, mu) and verify R(xi, X)Y");
  add_run_flags(fit_nullity, f, false);
  auto* fit_gssf = app.add_subcommand("fit-gssf", "fit the seven-function generalized S-space-form model (s = 2)");
  add_run_flags(fit_gssf, f, false);
  auto* fit_trans = app.add_subcommand("fit-trans-s", "fit the trans-S constants alpha, beta");
  add_run_flags(fit_trans, f, false);
  auto* deform = app.add_subcommand("deform", "D-homothetically deform an entry and run all checks");
  add_run_flags(deform, f, true);
  auto* catalog = app.add_subcommand("catalog", "catalog operations");
  catalog->require_subcommand(1);
  bool list_json = false;
  auto* list = catalog->add_subcommand("list", "list catalog keys");
  list->add_flag("--json", list_json, "print as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      const auto entries = fkm::catalog_list();
      const auto aux = fkm::catalog_auxiliary_keys();
      if (list_json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& e : entries) {
          nlohmann::json item = {{"key", e.key}, {"n", e.n}, {"s", e.s}, {"dim", e.model.dim()},
                                 {"convention", std::string(fkm::to_string(e.convention))}, {"listed", true}};
          if (e.expected) {
            item["kappa"] = e.expected->kappa;
            item["mu"] = e.expected->mu ? nlohmann::json(*e.expected->mu) : nlohmann::json(nullptr);
            item["H"] = e.expected->H ? nlohmann::json(*e.expected->H) : nlohmann::json(nullptr);
          }
          out.push_back(item);
        }
        for (const auto& k : aux) out.push_back({{"key", k}, {"listed", false}});
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& e : entries) {
          std::cout << e.key << "  n=" << e.n << " s=" << e.s << " " << fkm::to_string(e.convention);
          if (e.expected) {
            std::cout << "  kappa=" << e.expected->kappa;
            std::cout << " mu=" << (e.expected->mu ? std::to_string(*e.expected->mu) : std::string("undetermined"));
            if (e.expected->H) std::cout << " H=" << *e.expected->H;
          }
          std::cout << "\n";
        }
        for (const auto& k : aux) std::cout << k << "  (auxiliary)\n";
      }
      return 0;
    }

    if (*check) return execute(build_config(f, {}), f.text);
    if (*fit_nullity) return execute(build_config(f, {"nullity", "r_xi"}), f.text);
    if (*fit_gssf) return execute(build_config(f, {"gssf"}), f.text);
    if (*fit_trans) return execute(build_config(f, {"trans_s"}), f.text);
    if (*deform) {
      fkm::RunConfig c = build_config(f, {});
      if (!c.deform_a) throw fkm::ConfigError("deform needs --a");
      return execute(c, f.text);
    }
  } catch (const fkm::ConfigError& e) {
    print_error("config", e.what());
    return 2;
  } catch (const fkm::UnknownKeyError& e) {
    print_error("unknown_manifold", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return 2;
  }
  return 2;
}
