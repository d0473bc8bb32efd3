#pragma once

// Machine-readable run reports. Field names are the JSON schema in
// schemas/check_report.schema.json.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fkm {

struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
  bool operator==(const CheckRecord&) const = default;
};

struct SkippedCheck {
  std::string name;
  std::string reason;
  bool operator==(const SkippedCheck&) const = default;
};

struct ManifoldInfo {
  std::string key;
  std::string label;
  int n = 0;
  int s = 0;
  int dim = 0;
  std::string convention;
  bool operator==(const ManifoldInfo&) const = default;
};

struct FitSummary {
  double kappa = 0.0;
  double mu = 0.0;
  bool mu_determined = false;
  double residual = 0.0;
  double condition = 0.0;
  bool operator==(const FitSummary&) const = default;
};

struct SpectrumSummary {
  double lambda = 0.0;
  double eigenvalue_residual = 0.0;
  std::vector<double> eigenvalues;
  bool operator==(const SpectrumSummary&) const = default;
};

struct HSummary {
  double mean = 0.0;
  double spread = 0.0;
  std::optional<double> predicted;
  int samples = 0;
  bool operator==(const HSummary&) const = default;
};

struct GssfSummary {
  std::vector<double> F;
  double residual = 0.0;
  double spread = 0.0;
  std::vector<double> condition_residuals;
  bool conditions_hold = false;
  double kappa_implied = 0.0;
  bool operator==(const GssfSummary&) const = default;
};

struct TransSSummary {
  std::vector<double> alpha;
  std::vector<double> beta;
  double residual = 0.0;
  bool k_contact = false;
  std::optional<double> t421_residual;
  bool operator==(const TransSSummary&) const = default;
};

struct Verdicts {
  bool is_metric_f_contact = false;
  bool is_normal = false;
  bool is_s_manifold = false;
  bool is_space_form_candidate = false;
  bool operator==(const Verdicts&) const = default;
};

struct CheckReport {
  ManifoldInfo manifold;
  std::vector<CheckRecord> checks;           // decide the exit status
  std::vector<CheckRecord> classifications;  // properties; never affect the exit status
  std::vector<SkippedCheck> skipped;
  std::optional<FitSummary> fits;
  std::optional<SpectrumSummary> spectrum;
  std::optional<HSummary> H;
  std::optional<GssfSummary> gssf;
  std::optional<TransSSummary> trans_s;
  Verdicts verdicts;
  std::vector<std::string> diagnostics;
  std::uint64_t seed = 0;
  double wall_time = 0.0;

  bool all_pass() const;
  bool operator==(const CheckReport&) const = default;
};

enum class ReportFormat { Json, Text };

nlohmann::json to_json(const CheckReport& report);
CheckReport report_from_json(const nlohmann::json& j);

std::string emit_report(const CheckReport& report, ReportFormat format);

}  // namespace fkm
