#include "fkm/nullity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "fkm/least_squares.hpp"

namespace fkm {

LeastSquaresResult solve_least_squares(const MatrixXd& a, const VectorXd& b) {
  LeastSquaresResult out;
  const MatrixXd normal = a.transpose() * a;
  out.x = normal.colPivHouseholderQr().solve(a.transpose() * b);
  out.residual = relative_misfit(a * out.x - b, b);
  const VectorXd sv = Eigen::JacobiSVD<MatrixXd>(a).singularValues();
  out.condition = sv.size() && sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1]
                                                        : std::numeric_limits<double>::infinity();
  return out;
}

double relative_misfit(const VectorXd& diff, const VectorXd& ref) {
  if (diff.size() == 0) return 0.0;
  const double scale = std::max(1.0, ref.size() ? ref.cwiseAbs().maxCoeff() : 0.0);
  return diff.cwiseAbs().maxCoeff() / scale;
}

double column_rms(const MatrixXd& a, Eigen::Index col) {
  return a.rows() ? a.col(col).norm() / std::sqrt(static_cast<double>(a.rows())) : 0.0;
}

namespace {

struct PointData {
  LocalGeometry geo;
  StructureTensors st;
  MatrixXd f2;
  MatrixXd h;  // h_1, the common value when kappa < 1
  VectorXd xib;
  VectorXd etab;
};

PointData point_data(const ManifoldModel& model, const Point& p) {
  PointData d{local_geometry(model, p), {}, {}, {}, {}, {}};
  d.st = structure_at(d.geo, model.convention());
  d.f2 = d.geo.f * d.geo.f;
  d.h = d.st.h_mat[0];
  d.xib = d.st.xi_bar;
  d.etab = d.st.eta_bar;
  return d;
}

const VectorXd& cyclic(const std::vector<VectorXd>& v, std::size_t i) { return v[i % v.size()]; }

void require_vectors(const std::vector<VectorXd>& v, std::size_t minimum, const char* op) {
  if (v.size() < minimum) throw InsufficientSampleError(std::string(op) + " needs more vector samples");
}

// Accumulates frame components of (lhs, rhs) and reports relative_misfit.
class Misfit {
 public:
  void add(const LocalGeometry& geo, const VectorXd& lhs, const VectorXd& rhs) {
    const VectorXd l = geo.frame(lhs), r = geo.frame(rhs);
    max_diff_ = std::max(max_diff_, (l - r).cwiseAbs().maxCoeff());
    max_ref_ = std::max(max_ref_, l.cwiseAbs().maxCoeff());
  }
  double value() const { return max_diff_ / std::max(1.0, max_ref_); }

 private:
  double max_diff_ = 0.0;
  double max_ref_ = 0.0;
};

void append_rows(MatrixXd& a, VectorXd& b, Eigen::Index& row, const MatrixXd& cols, const VectorXd& rhs) {
  a.middleRows(row, cols.rows()) = cols;
  b.segment(row, rhs.size()) = rhs;
  row += cols.rows();
}

}  // namespace

NullityFit fit_nullity(const ManifoldModel& model, const std::vector<Point>& points,
                       const std::vector<VectorXd>& vectors, double mu_tolerance) {
  if (points.empty()) throw InsufficientSampleError("fit_nullity needs at least one point");
  require_vectors(vectors, 2, "fit_nullity");
  const int d = model.dim();
  const auto pairs = static_cast<Eigen::Index>(vectors.size());
  const Eigen::Index rows = static_cast<Eigen::Index>(points.size()) * pairs * model.s() * d;
  MatrixXd a(rows, 2);
  VectorXd b(rows);
  Eigen::Index row = 0;
  for (const Point& p : points) {
    const PointData pd = point_data(model, p);
    for (Eigen::Index i = 0; i < pairs; ++i) {
      const VectorXd& x = cyclic(vectors, i);
      const VectorXd& y = cyclic(vectors, i + 1);
      const double ex = pd.etab.dot(x), ey = pd.etab.dot(y);
      const VectorXd kappa_col = pd.geo.frame(ex * (pd.f2 * y) - ey * (pd.f2 * x));
      for (int al = 0; al < model.s(); ++al) {
        const MatrixXd& h = pd.st.h_mat[al];
        MatrixXd cols(d, 2);
        cols.col(0) = kappa_col;
        cols.col(1) = pd.geo.frame(ey * (h * x) - ex * (h * y));
        append_rows(a, b, row, cols, pd.geo.frame(pd.geo.R(x, y, pd.geo.xi[al])));
      }
    }
  }

  if (column_rms(a, 0) < mu_tolerance)
    throw InsufficientSampleError("nullity system has rank 0: every eta-term vanishes on the samples");

  NullityFit fit;
  fit.rows = static_cast<int>(rows);
  if (column_rms(a, 1) < mu_tolerance) {
    const LeastSquaresResult ls = solve_least_squares(a.leftCols(1), b);
    fit.kappa = ls.x[0];
    fit.mu = 0.0;
    fit.mu_determined = false;
    fit.residual = ls.residual;
    fit.condition = ls.condition;
  } else {
    const LeastSquaresResult ls = solve_least_squares(a, b);
    fit.kappa = ls.x[0];
    fit.mu = ls.x[1];
    fit.residual = ls.residual;
    fit.condition = ls.condition;
  }
  fit.lambda = fit.kappa < 1.0 ? std::sqrt(1.0 - fit.kappa) : 0.0;
  return fit;
}

double verify_r_xi(const ManifoldModel& model, const NullityFit& fit, const std::vector<Point>& points,
                   const std::vector<VectorXd>& vectors) {
  require_vectors(vectors, 2, "verify_r_xi");
  const double kappa = fit.kappa, mu = fit.mu_or_zero();
  Misfit misfit;
  for (const Point& p : points) {
    const PointData pd = point_data(model, p);
    const LocalGeometry& geo = pd.geo;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const VectorXd& x = cyclic(vectors, i);
      const VectorXd& y = cyclic(vectors, i + 1);
      const double ey = pd.etab.dot(y);
      const VectorXd rhs = kappa * (ey * (pd.f2 * x) - geo.inner(x, pd.f2 * y) * pd.xib) +
                           mu * (geo.inner(x, pd.h * y) * pd.xib - ey * (pd.h * x));
      for (int al = 0; al < model.s(); ++al) misfit.add(geo, geo.R(geo.xi[al], x, y), rhs);
    }
  }
  return misfit.value();
}

SpectrumReport h_spectrum(const ManifoldModel& model, const NullityFit& fit, const Point& p, double tolerance) {
  const PointData pd = point_data(model, p);
  const LocalGeometry& geo = pd.geo;
  const int d = geo.dim, n = geo.n;
  SpectrumReport rep;
  rep.P_L = -pd.f2;
  for (int al = 0; al < model.s(); ++al) rep.equality_residual.push_back(norm_11(geo, pd.st.h_mat[al] - pd.h));

  if (fit.kappa >= 1.0 - tolerance) {
    double worst = 0.0;
    for (const MatrixXd& h : pd.st.h_mat) worst = std::max(worst, norm_11(geo, h));
    if (worst > tolerance)
      throw InconsistencyError("kappa >= 1 but |h| = " + std::to_string(worst) + " does not vanish");
    rep.s_case = true;
    rep.eigenvalues = VectorXd::Zero(2 * n);
    rep.P_plus = MatrixXd::Zero(d, d);
    rep.P_minus = MatrixXd::Zero(d, d);
    return rep;
  }

  rep.lambda = std::sqrt(1.0 - fit.kappa);

  // Restrict h to L in an orthonormal frame.
  const MatrixXd lt = geo.chol_l.transpose();
  const MatrixXd sym = lt * pd.h * lt.inverse();
  MatrixXd u(d, model.s());
  for (int al = 0; al < model.s(); ++al) u.col(al) = lt * geo.xi[al];
  const MatrixXd proj = MatrixXd::Identity(d, d) - u * (u.transpose() * u).ldlt().solve(u.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> pe(0.5 * (proj + proj.transpose()));
  const MatrixXd basis = pe.eigenvectors().rightCols(2 * n);
  const MatrixXd restricted = basis.transpose() * (0.5 * (sym + sym.transpose())) * basis;
  rep.eigenvalues = Eigen::SelfAdjointEigenSolver<MatrixXd>(restricted).eigenvalues();
  for (int i = 0; i < 2 * n; ++i) {
    const double expected = i < n ? -rep.lambda : rep.lambda;
    rep.eigenvalue_residual = std::max(rep.eigenvalue_residual, std::abs(rep.eigenvalues[i] - expected));
  }

  rep.P_plus = 0.5 * (rep.P_L + pd.h / rep.lambda);
  rep.P_minus = 0.5 * (rep.P_L - pd.h / rep.lambda);
  rep.swap_residual = norm_11(geo, geo.f * rep.P_plus - rep.P_minus * geo.f);
  rep.projector_residual = norm_11(geo, rep.P_plus + rep.P_minus - rep.P_L) +
                           norm_11(geo, rep.P_plus * rep.P_plus - rep.P_plus);
  return rep;
}

RfResidual check_rf_identity(const ManifoldModel& model, const NullityFit& fit, const std::vector<Point>& points,
                             const std::vector<VectorXd>& vectors) {
  require_vectors(vectors, 3, "check_rf_identity");
  const double kappa = fit.kappa, mu = fit.mu_or_zero();
  const double s = model.s();
  Misfit general, xi_branch;
  for (const Point& p : points) {
    const PointData pd = point_data(model, p);
    const LocalGeometry& geo = pd.geo;
    const MatrixXd& f = geo.f;
    const MatrixXd& h = pd.h;
    const MatrixXd fh = f * h;
    auto rhs = [&](const VectorXd& x, const VectorXd& y, const VectorXd& z) {
      const double ex = pd.etab.dot(x), ey = pd.etab.dot(y), ez = pd.etab.dot(z);
      const VectorXd fx = f * x, fy = f * y, fhx = fh * x, fhy = fh * y;
      const VectorXd hx = h * x, hy = h * y, f2x = pd.f2 * x, f2y = pd.f2 * y;
      VectorXd out = f * geo.R(x, y, z);
      out += (kappa * (ey * geo.inner(fx, z) - ex * geo.inner(fy, z)) +
              mu * (ey * geo.inner(fhx, z) - ex * geo.inner(fhy, z))) *
             pd.xib;
      out += s * (-geo.inner(hy - f2y, z) * (fx + fhx) + geo.inner(hx - f2x, z) * (fy + fhy) -
                  geo.inner(fy + fhy, z) * (hx - f2x) + geo.inner(fx + fhx, z) * (hy - f2y));
      out += ez * (kappa * (ex * fy - ey * fx) + mu * (ex * fhy - ey * fhx));
      return out;
    };
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const VectorXd& x = cyclic(vectors, i);
      const VectorXd& y = cyclic(vectors, i + 1);
      const VectorXd& z = cyclic(vectors, i + 2);
      general.add(geo, geo.R(x, y, f * z), rhs(x, y, z));
      for (int be = 0; be < model.s(); ++be) xi_branch.add(geo, geo.R(x, y, f * geo.xi[be]), rhs(x, y, geo.xi[be]));
    }
  }
  return {general.value(), xi_branch.value()};
}

double check_ricci_model(const ManifoldModel& model, const NullityFit& fit, const std::vector<Point>& points) {
  if (fit.kappa >= 1.0 - 1e-6) throw PreconditionError("the Ricci model is stated for kappa < 1");
  const double n = model.n(), s = model.s();
  const double kappa = fit.kappa, mu = fit.mu_or_zero();
  double worst = 0.0;
  for (const Point& p : points) {
    const PointData pd = point_data(model, p);
    const MatrixXd& q = pd.geo.curvature.ricci_op;
    const MatrixXd qm = s * (2.0 * (1.0 - n) + n * mu) * pd.f2 + s * (2.0 * (n - 1.0) + mu) * pd.h +
                        2.0 * n * kappa * pd.xib * pd.etab.transpose();
    worst = std::max(worst, norm_11(pd.geo, q - qm) / std::max(1.0, norm_11(pd.geo, q)));
  }
  return worst;
}

double f_sectional(const LocalGeometry& geo, const VectorXd& x, double tolerance) {
  for (int al = 0; al < geo.s; ++al)
    if (std::abs(geo.eta[al].dot(x)) > tolerance)
      throw InvalidSectionError("f-section vector is not in L (eta_" + std::to_string(al + 1) + "(X) != 0)");
  if (std::abs(norm_vec(geo, x) - 1.0) > tolerance) throw InvalidSectionError("f-section vector is not a unit vector");
  const VectorXd fx = geo.f * x;
  if (std::abs(norm_vec(geo, fx) - 1.0) > tolerance) throw InvalidSectionError("|fX| deviates from 1");
  return geo.inner(geo.R(x, fx, fx), x);
}

double f_sectional(const ManifoldModel& model, const Point& p, const VectorXd& x, double tolerance) {
  return f_sectional(local_geometry(model, p), x, tolerance);
}

std::vector<VectorXd> sample_sections(const LocalGeometry& geo, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const MatrixXd proj = -(geo.f * geo.f);
  std::vector<VectorXd> out;
  out.reserve(count);
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * count + 1000) throw InsufficientSampleError("could not sample sections of L");
    VectorXd v(geo.dim);
    for (int i = 0; i < geo.dim; ++i) v[i] = normal(rng);
    v = proj * v;
    const double len = norm_vec(geo, v);
    if (len < 1e-3) continue;
    out.push_back(v / len);
  }
  return out;
}

SpaceFormReport sample_H_constancy(const ManifoldModel& model, const std::vector<Point>& points,
                                   int sections_per_point, std::uint64_t seed) {
  SpaceFormReport rep;
  rep.n = model.n();
  rep.s = model.s();
  std::uint64_t point_seed = seed;
  for (const Point& p : points) {
    const LocalGeometry geo = local_geometry(model, p);
    for (const VectorXd& x : sample_sections(geo, sections_per_point, point_seed++))
      rep.H_samples.push_back(f_sectional(geo, x));
  }
  if (!rep.H_samples.empty()) {
    double sum = 0.0;
    for (double h : rep.H_samples) sum += h;
    rep.H_mean = sum / static_cast<double>(rep.H_samples.size());
    const auto [lo, hi] = std::minmax_element(rep.H_samples.begin(), rep.H_samples.end());
    rep.H_spread = *hi - *lo;
  }
  return rep;
}

double check_curvature_model(const ManifoldModel& model, const NullityFit& fit, double H,
                             const std::vector<Point>& points, const std::vector<VectorXd>& vectors) {
  require_vectors(vectors, 3, "check_curvature_model");
  const double s = model.s();
  const double kappa = fit.kappa, mu = fit.mu_or_zero();
  Misfit misfit;
  for (const Point& p : points) {
    const PointData pd = point_data(model, p);
    const LocalGeometry& geo = pd.geo;
    const MatrixXd& f = geo.f;
    const MatrixXd& h = pd.h;
    const MatrixXd fh = f * h;
    auto g = [&](const VectorXd& a, const VectorXd& b) { return geo.inner(a, b); };
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const VectorXd& x = cyclic(vectors, i);
      const VectorXd& y = cyclic(vectors, i + 1);
      const VectorXd& z = cyclic(vectors, i + 2);
      const VectorXd fx = f * x, fy = f * y, fz = f * z;
      const VectorXd f2x = pd.f2 * x, f2y = pd.f2 * y, f2z = pd.f2 * z;
      const VectorXd hx = h * x, hy = h * y, hz = h * z;
      const VectorXd fhx = fh * x, fhy = fh * y;
      const double ex = pd.etab.dot(x), ey = pd.etab.dot(y), ez = pd.etab.dot(z);
      VectorXd rhs = (H + 3.0 * s) * (g(f2y, z) * f2x - g(f2x, z) * f2y);
      rhs += (H - s) * (2.0 * g(fy, x) * fz + g(x, fz) * fy - g(y, fz) * fx);
      rhs -= 2.0 * s *
             (g(hx, z) * hy - g(hy, z) * hx - g(fhx, z) * fhy + g(fhy, z) * fhx - 2.0 * g(f2x, z) * hy +
              2.0 * g(f2y, z) * hx - 2.0 * g(hx, z) * f2y + 2.0 * g(hy, z) * f2x);
      rhs += 4.0 * kappa * (ex * ez * f2y - ex * g(y, f2z) * pd.xib - ey * ez * f2x + ey * g(x, f2z) * pd.xib);
      rhs += 4.0 * mu * (ey * ez * hx - ey * g(x, hz) * pd.xib - ex * ez * hy + ex * g(y, hz) * pd.xib);
      misfit.add(geo, 4.0 * geo.R(x, y, z), rhs);
    }
  }
  return misfit.value();
}

SpaceFormVerdict space_form_criterion(const NullityFit& fit, const SpaceFormReport& report, double tolerance) {
  SpaceFormVerdict v;
  const double n = report.n, s = report.s;
  v.n_greater_than_one = report.n > 1;
  v.constant_H = report.H_spread < tolerance;
  if (fit.kappa >= 1.0 - tolerance) {
    v.note = "not applicable: kappa = 1 (S-manifold), H is not fixed by kappa and mu";
    return v;
  }
  v.applicable = true;
  const double kappa = fit.kappa, mu = fit.mu_or_zero();
  v.mu_gap = std::abs(mu - (kappa + 1.0));
  v.mu_condition = v.mu_gap < tolerance;
  v.predicted_H = -s * (2.0 * kappa + 1.0);
  v.H_gap = std::abs(report.H_mean - v.predicted_H);
  v.h_relation_residual = std::abs((n + 1.0) * report.H_mean - s * (n - 1.0 - 2.0 * mu * n - 2.0 * kappa));
  if (v.n_greater_than_one) {
    v.predicts_space_form = v.mu_condition;
    v.note = v.mu_condition ? "mu = kappa + 1: space form" : "mu != kappa + 1: not a space form";
  } else {
    v.note = "n = 1: mu = kappa + 1 is not necessary for constant f-sectional curvature";
  }
  return v;
}

double check_splitting_lemma(const ManifoldModel& model, const NullityFit& fit, const Point& p, int section_samples,
                             std::uint64_t seed) {
  if (fit.kappa >= 1.0 - 1e-6) throw PreconditionError("the L+/L- split needs kappa < 1");
  const PointData pd = point_data(model, p);
  const LocalGeometry& geo = pd.geo;
  const double s = model.s(), kappa = fit.kappa, mu = fit.mu_or_zero();
  const double lambda = std::sqrt(1.0 - kappa);
  const MatrixXd p_plus = 0.5 * (-pd.f2 + pd.h / lambda);
  const MatrixXd p_minus = 0.5 * (-pd.f2 - pd.h / lambda);
  double worst = 0.0;
  for (const VectorXd& x : sample_sections(geo, section_samples, seed)) {
    const VectorXd xp = p_plus * x, xm = p_minus * x;
    const double mixed = geo.inner(xp, geo.f * xm);
    const double formula =
        -s * (kappa + mu) + 4.0 * s * (kappa - mu + 1.0) * (geo.inner(xp, xp) * geo.inner(xm, xm) - mixed * mixed);
    worst = std::max(worst, std::abs(f_sectional(geo, x) - formula));
  }
  return worst;
}

GssfFit fit_gssf(const ManifoldModel& model, const std::vector<Point>& points, const std::vector<VectorXd>& vectors,
                 double tolerance) {
  if (model.s() != 2) throw NotApplicableError("the generalized S-space-form ansatz needs s = 2");
  require_vectors(vectors, 3, "fit_gssf");
  const int d = model.dim();
  GssfFit out;
  out.F.assign(7, 0.0);
  for (const Point& p : points) {
    const LocalGeometry geo = local_geometry(model, p);
    const MatrixXd& f = geo.f;
    const VectorXd &e1 = geo.eta[0], &e2 = geo.eta[1], &x1 = geo.xi[0], &x2 = geo.xi[1];
    auto g = [&](const VectorXd& a, const VectorXd& b) { return geo.inner(a, b); };
    const auto count = static_cast<Eigen::Index>(vectors.size());
    MatrixXd a(count * d, 7);
    VectorXd b(count * d);
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < count; ++i) {
      const VectorXd& x = cyclic(vectors, i);
      const VectorXd& y = cyclic(vectors, i + 1);
      const VectorXd& z = cyclic(vectors, i + 2);
      auto eta_term = [&](const VectorXd& ea, const VectorXd& eb, const VectorXd& xb) -> VectorXd {
        return ea.dot(x) * eb.dot(z) * y - ea.dot(y) * eb.dot(z) * x + g(x, z) * ea.dot(y) * xb -
               g(y, z) * ea.dot(x) * xb;
      };
      MatrixXd cols(d, 7);
      cols.col(0) = g(y, z) * x - g(x, z) * y;
      cols.col(1) = g(x, f * z) * (f * y) - g(y, f * z) * (f * x) + 2.0 * g(x, f * y) * (f * z);
      cols.col(2) = eta_term(e1, e1, x1);
      cols.col(3) = eta_term(e2, e2, x2);
      cols.col(4) = eta_term(e1, e2, x2);
      cols.col(5) = eta_term(e2, e1, x1);
      cols.col(6) = e1.dot(x) * e2.dot(y) * e2.dot(z) * x1 - e2.dot(x) * e1.dot(y) * e2.dot(z) * x1 +
                    e2.dot(x) * e1.dot(y) * e1.dot(z) * x2 - e1.dot(x) * e2.dot(y) * e1.dot(z) * x2;
      const Eigen::Index base = row;
      for (int c = 0; c < 7; ++c) a.block(base, c, d, 1) = geo.frame(cols.col(c));
      b.segment(base, d) = geo.frame(geo.R(x, y, z));
      row += d;
    }
    const LeastSquaresResult ls = solve_least_squares(a, b);
    out.residual = std::max(out.residual, ls.residual);
    out.condition_number = std::max(out.condition_number, ls.condition);
    out.F_per_point.emplace_back(ls.x.data(), ls.x.data() + 7);
  }
  for (int k = 0; k < 7; ++k) {
    double lo = out.F_per_point.front()[k], hi = lo, sum = 0.0;
    for (const auto& fp : out.F_per_point) {
      lo = std::min(lo, fp[k]);
      hi = std::max(hi, fp[k]);
      sum += fp[k];
    }
    out.F[k] = sum / static_cast<double>(out.F_per_point.size());
    out.spread = std::max(out.spread, hi - lo);
  }
  const auto& F = out.F;
  out.kappa_implied = F[0] - F[2];
  out.condition_residuals = {std::abs(out.kappa_implied + F[4]), std::abs(out.kappa_implied + F[5]),
                             std::abs(out.kappa_implied - (F[3] - F[6]))};
  out.conditions_hold = out.spread < tolerance &&
                        std::all_of(out.condition_residuals.begin(), out.condition_residuals.end(),
                                    [&](double r) { return r < tolerance; });
  const NullityFit nf = fit_nullity(model, points, vectors);
  out.kappa_gap = std::abs(out.kappa_implied - nf.kappa);
  if (nf.mu_determined) out.mu_gap = std::abs(nf.mu);
  return out;
}

TransSFit fit_trans_s(const ManifoldModel& model, const std::vector<Point>& points,
                      const std::vector<VectorXd>& vectors, double tolerance) {
  require_vectors(vectors, 2, "fit_trans_s");
  const int d = model.dim(), s = model.s();
  TransSFit out;
  out.alpha.assign(s, 0.0);
  out.beta.assign(s, 0.0);
  double max_h = 0.0;
  Misfit t421;
  for (const Point& p : points) {
    const PointData pd = point_data(model, p);
    const LocalGeometry& geo = pd.geo;
    const MatrixXd& f = geo.f;
    for (const MatrixXd& h : pd.st.h_mat) max_h = std::max(max_h, norm_11(geo, h));
    const auto count = static_cast<Eigen::Index>(vectors.size());
    MatrixXd a(count * d, 2 * s);
    VectorXd b(count * d);
    for (Eigen::Index i = 0; i < count; ++i) {
      const VectorXd& x = cyclic(vectors, i);
      const VectorXd& y = cyclic(vectors, i + 1);
      const VectorXd fx = f * x, fy = f * y, f2x = pd.f2 * x;
      const VectorXd nfxy = geo.nabla_f(x, y);
      for (int k = 0; k < s; ++k) {
        const double ey = geo.eta[k].dot(y);
        a.block(i * d, k, d, 1) = geo.frame(geo.inner(fx, fy) * geo.xi[k] + ey * f2x);
        a.block(i * d, s + k, d, 1) = geo.frame(geo.inner(fx, y) * geo.xi[k] - ey * fx);
      }
      b.segment(i * d, d) = geo.frame(nfxy);
      for (int al = 0; al < s; ++al) t421.add(geo, geo.R(x, geo.xi[al], y), -nfxy);
    }
    const LeastSquaresResult ls = solve_least_squares(a, b);
    out.residual = std::max(out.residual, ls.residual);
    out.condition_number = std::max(out.condition_number, ls.condition);
    out.alpha_per_point.emplace_back(ls.x.data(), ls.x.data() + s);
    out.beta_per_point.emplace_back(ls.x.data() + s, ls.x.data() + 2 * s);
  }
  const double count = static_cast<double>(points.size());
  for (int k = 0; k < s; ++k) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      out.alpha[k] += out.alpha_per_point[j][k] / count;
      out.beta[k] += out.beta_per_point[j][k] / count;
    }
  }
  out.k_contact = max_h < tolerance;
  if (out.k_contact) {
    out.t421_residual = t421.value();
    double bmax = 0.0;
    for (const auto& bp : out.beta_per_point)
      for (double v : bp) bmax = std::max(bmax, std::abs(v));
    out.beta_max = bmax;
  }
  return out;
}

}  // namespace fkm
