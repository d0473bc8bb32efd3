#include "fkm/fstructure.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace fkm {

MatrixXd lie_derivative_f(const LocalGeometry& geo, const VectorXd& v, const MatrixXd& dv) {
  // (L_V f)^i_j = V^k d_k f^i_j - f^k_j d_k V^i + f^i_k d_j V^k
  MatrixXd out = -dv * geo.f + geo.f * dv;
  for (int k = 0; k < geo.dim; ++k) out += v[k] * geo.df[k];
  return out;
}

MatrixXd lie_derivative_g(const LocalGeometry& geo, const VectorXd& v, const MatrixXd& dv) {
  // (L_V g)_ij = V^k d_k g_ij + g_kj d_i V^k + g_ik d_j V^k
  MatrixXd out = dv.transpose() * geo.g + geo.g * dv;
  for (int k = 0; k < geo.dim; ++k) out += v[k] * geo.dg[k];
  return out;
}

StructureTensors structure_at(const LocalGeometry& geo, Convention convention) {
  const int d = geo.dim;
  StructureTensors st;
  st.f_mat = geo.f;
  st.F_mat = geo.g * geo.f;
  st.xi_bar = VectorXd::Zero(d);
  st.eta_bar = VectorXd::Zero(d);
  for (int a = 0; a < geo.s; ++a) {
    st.d_eta.push_back(exterior_derivative(geo.deta[a], convention));
    st.h_mat.push_back(0.5 * lie_derivative_f(geo, geo.xi[a], geo.dxi[a]));
    st.xi_bar += geo.xi[a];
    st.eta_bar += geo.eta[a];
  }

  // [f,f](d_i,d_j)^k = f^m_i d_m f^k_j - f^m_j d_m f^k_i + f^k_m (d_j f^m_i - d_i f^m_j)
  st.nijenhuis = Tensor3(d);
  std::vector<MatrixXd> dh_half;
  for (int a = 0; a < geo.s; ++a) dh_half.push_back(exterior_derivative(geo.deta[a], Convention::Half));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      VectorXd fdf = VectorXd::Zero(d);
      for (int m = 0; m < d; ++m) fdf += geo.f(m, i) * geo.df[m].col(j) - geo.f(m, j) * geo.df[m].col(i);
      const VectorXd twist = geo.f * (geo.df[j].col(i) - geo.df[i].col(j));
      VectorXd total = fdf + twist;
      for (int a = 0; a < geo.s; ++a) total += 2.0 * dh_half[a](i, j) * geo.xi[a];
      for (int k = 0; k < d; ++k) st.nijenhuis(k, i, j) = total[k];
    }
  return st;
}

StructureTensors structure_at(const ManifoldModel& model, const Point& p) {
  return structure_at(local_geometry(model, p), model.convention());
}

namespace {

int numeric_rank(const MatrixXd& m) {
  const VectorXd sv = Eigen::JacobiSVD<MatrixXd>(m).singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  const double cut = 1e-6 * sv[0];
  return static_cast<int>((sv.array() > cut).count());
}

double normality_at(const LocalGeometry& geo, const StructureTensors& st) {
  double worst = 0.0;
  VectorXd v(geo.dim);
  for (int i = 0; i < geo.dim; ++i)
    for (int j = i + 1; j < geo.dim; ++j) {
      for (int k = 0; k < geo.dim; ++k) v[k] = st.nijenhuis(k, i, j);
      worst = std::max(worst, norm_vec(geo, v));
    }
  return worst;
}

}  // namespace

std::vector<NamedResidual> AxiomReport::metric_f_residuals() const {
  return {{"eta_xi", r_eta_xi, tolerance},       {"f_xi", r_f_xi, tolerance},
          {"eta_f", r_eta_f, tolerance},         {"f_squared", r_f_squared, tolerance},
          {"compatibility", r_compat, tolerance}, {"rank", r_rank, 0.0}};
}

std::vector<NamedResidual> AxiomReport::all_residuals() const {
  auto out = metric_f_residuals();
  for (std::size_t a = 0; a < r_contact.size(); ++a)
    out.push_back({"contact_" + std::to_string(a + 1), r_contact[a], tolerance});
  out.push_back({"normality", r_normal, tolerance});
  return out;
}

bool AxiomReport::is_metric_f_manifold() const {
  const auto rs = metric_f_residuals();
  return std::all_of(rs.begin(), rs.end(), [](const NamedResidual& r) { return r.pass(); });
}

bool AxiomReport::is_metric_f_contact() const {
  return is_metric_f_manifold() &&
         std::all_of(r_contact.begin(), r_contact.end(), [&](double r) { return r <= tolerance; });
}

AxiomReport check_f_axioms(const ManifoldModel& model, const std::vector<Point>& points, double tolerance) {
  if (points.empty()) throw std::invalid_argument("check_f_axioms needs at least one point");
  AxiomReport rep;
  rep.tolerance = tolerance;
  rep.convention_used = model.convention();
  rep.r_contact.assign(model.s(), 0.0);
  const int d = model.dim();
  const int s = model.s();
  for (const Point& p : points) {
    const LocalGeometry geo = local_geometry(model, p);
    const StructureTensors st = structure_at(geo, model.convention());
    MatrixXd eta_xi(d, d);
    MatrixXd eta_eta = MatrixXd::Zero(d, d);
    MatrixXd xi_eta = MatrixXd::Zero(d, d);
    for (int a = 0; a < s; ++a) {
      for (int b = 0; b < s; ++b)
        rep.r_eta_xi = std::max(rep.r_eta_xi, std::abs(geo.eta[a].dot(geo.xi[b]) - (a == b ? 1.0 : 0.0)));
      rep.r_f_xi = std::max(rep.r_f_xi, norm_vec(geo, geo.f * geo.xi[a]));
      rep.r_eta_f = std::max(rep.r_eta_f, norm_covec(geo, geo.f.transpose() * geo.eta[a]));
      eta_eta += geo.eta[a] * geo.eta[a].transpose();
      xi_eta += geo.xi[a] * geo.eta[a].transpose();
      rep.r_contact[a] = std::max(rep.r_contact[a], norm_02(geo, st.F_mat - st.d_eta[a]));
    }
    const MatrixXd id = MatrixXd::Identity(d, d);
    rep.r_f_squared = std::max(rep.r_f_squared, norm_11(geo, geo.f * geo.f + id - xi_eta));
    rep.r_compat = std::max(rep.r_compat, norm_02(geo, geo.f.transpose() * geo.g * geo.f - geo.g + eta_eta));
    rep.r_rank = std::max(rep.r_rank, std::abs(static_cast<double>(numeric_rank(geo.f) - 2 * model.n())));
    rep.r_normal = std::max(rep.r_normal, normality_at(geo, st));
  }
  return rep;
}

std::vector<double> check_contact(const ManifoldModel& model, const std::vector<Point>& points,
                                  std::optional<Convention> convention) {
  const Convention conv = convention.value_or(model.convention());
  std::vector<double> worst(model.s(), 0.0);
  for (const Point& p : points) {
    const LocalGeometry geo = local_geometry(model, p);
    const MatrixXd F = geo.g * geo.f;
    for (int a = 0; a < model.s(); ++a)
      worst[a] = std::max(worst[a], norm_02(geo, F - exterior_derivative(geo.deta[a], conv)));
  }
  return worst;
}

double check_normality(const ManifoldModel& model, const std::vector<Point>& points) {
  double worst = 0.0;
  for (const Point& p : points) {
    const LocalGeometry geo = local_geometry(model, p);
    worst = std::max(worst, normality_at(geo, structure_at(geo, model.convention())));
  }
  return worst;
}

HPropertiesReport check_h_properties(const ManifoldModel& model, const std::vector<Point>& points) {
  HPropertiesReport rep;
  for (const Point& p : points) {
    const LocalGeometry geo = local_geometry(model, p);
    const StructureTensors st = structure_at(geo, model.convention());
    for (int a = 0; a < model.s(); ++a) {
      const MatrixXd& h = st.h_mat[a];
      for (int b = 0; b < model.s(); ++b) {
        rep.r_h_xi = std::max(rep.r_h_xi, norm_vec(geo, h * geo.xi[b]));
        rep.r_eta_h = std::max(rep.r_eta_h, norm_covec(geo, st.h_mat[b].transpose() * geo.eta[a]));
      }
      const MatrixXd gh = geo.g * h;
      rep.r_symmetric = std::max(rep.r_symmetric, norm_02(geo, gh - gh.transpose()));
      rep.r_trace = std::max(rep.r_trace, std::abs(h.trace()));
      rep.r_anticommute = std::max(rep.r_anticommute, norm_11(geo, geo.f * h + h * geo.f));
      rep.r_equal = std::max(rep.r_equal, norm_11(geo, h - st.h_mat[0]));
      rep.max_h_norm = std::max(rep.max_h_norm, norm_11(geo, h));
    }
  }
  return rep;
}

double KillingReport::max_killing() const {
  return killing.empty() ? 0.0 : *std::max_element(killing.begin(), killing.end());
}

double KillingReport::max_h_norm() const {
  return h_norm.empty() ? 0.0 : *std::max_element(h_norm.begin(), h_norm.end());
}

bool KillingReport::agrees(double tol) const {
  for (std::size_t i = 0; i < killing.size(); ++i)
    if ((killing[i] < tol) != (h_norm[i] < tol)) return false;
  return true;
}

KillingReport killing_check(const ManifoldModel& model, int alpha, const std::vector<Point>& points) {
  if (alpha < 0 || alpha >= model.s()) throw std::out_of_range("structure index out of range");
  KillingReport rep;
  for (const Point& p : points) {
    const LocalGeometry geo = local_geometry(model, p);
    rep.killing.push_back(norm_02(geo, lie_derivative_g(geo, geo.xi[alpha], geo.dxi[alpha])));
    rep.h_norm.push_back(norm_11(geo, 0.5 * lie_derivative_f(geo, geo.xi[alpha], geo.dxi[alpha])));
  }
  return rep;
}

}  // namespace fkm
