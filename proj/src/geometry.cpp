#include "fkm/geometry.hpp"

#include <random>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace fkm {
namespace {

MatrixXd part(const DualMatrix& m, double HyperDual::*field) {
  MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).*field;
  return out;
}

VectorXd part(const DualVector& v, double HyperDual::*field) {
  VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i].*field;
  return out;
}

void check_shape(const MatrixXd& m, int d, const char* what) {
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument(std::string(what) + " evaluator returned a matrix of the wrong size");
}

std::string describe(const VectorXd& p) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

}  // namespace

Jet1 vector_jet(const VectorField& field, const VectorXd& x) {
  const auto d = static_cast<int>(x.size());
  Jet1 jet;
  jet.jacobian.resize(d, d);
  for (int k = 0; k < d; ++k) {
    const DualVector v = field(seeded(x, k, -1));
    if (v.size() != d) throw std::invalid_argument("vector field evaluator returned the wrong size");
    if (k == 0) jet.value = part(v, &HyperDual::v);
    jet.jacobian.col(k) = part(v, &HyperDual::d1);
  }
  return jet;
}

LocalGeometry local_geometry(const ManifoldModel& model, const Point& p) {
  const int d = model.dim();
  if (p.coords.size() != d) throw std::invalid_argument("point has the wrong dimension");

  LocalGeometry geo;
  geo.n = model.n();
  geo.s = model.s();
  geo.dim = d;
  geo.point = p.coords;

  // Metric with first and second partials: seed (a, b) gives d_a g in d1 and
  // d_a d_b g in d12.
  geo.dg.assign(d, MatrixXd::Zero(d, d));
  std::vector<MatrixXd> ddg(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      const DualMatrix gd = model.metric(seeded(p.coords, a, b));
      if (a == 0 && b == 0) {
        geo.g = part(gd, &HyperDual::v);
        check_shape(geo.g, d, "metric");
      }
      if (b == a) geo.dg[a] = part(gd, &HyperDual::d1);
      ddg[a * d + b] = part(gd, &HyperDual::d12);
      ddg[b * d + a] = ddg[a * d + b];
    }
  }
  geo.g = 0.5 * (geo.g + geo.g.transpose()).eval();

  Eigen::LLT<MatrixXd> llt(geo.g);
  if (llt.info() != Eigen::Success || !geo.g.allFinite())
    throw DegenerateMetricError("metric is not positive definite at " + describe(p.coords), p.coords);
  geo.chol_l = llt.matrixL();
  geo.g_inv = llt.solve(MatrixXd::Identity(d, d));

  // f, xi, eta with first derivatives.
  geo.df.assign(d, MatrixXd::Zero(d, d));
  for (int k = 0; k < d; ++k) {
    const DualMatrix fd = model.structure(seeded(p.coords, k, -1));
    if (k == 0) {
      geo.f = part(fd, &HyperDual::v);
      check_shape(geo.f, d, "structure");
    }
    geo.df[k] = part(fd, &HyperDual::d1);
  }
  for (int alpha = 0; alpha < model.s(); ++alpha) {
    Jet1 xi = vector_jet(model.spec().xi[alpha], p.coords);
    Jet1 eta = vector_jet(model.spec().eta[alpha], p.coords);
    geo.xi.push_back(std::move(xi.value));
    geo.dxi.push_back(std::move(xi.jacobian));
    geo.eta.push_back(std::move(eta.value));
    geo.deta.push_back(std::move(eta.jacobian));
  }

  // Christoffel symbols and their partials.
  Tensor3 lowered(d);  // Gamma_{l i j}
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        lowered(l, i, j) = 0.5 * (geo.dg[i](j, l) + geo.dg[j](i, l) - geo.dg[l](i, j));

  Tensor3& gamma = geo.connection.gamma;
  gamma = Tensor3(d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int l = 0; l < d; ++l) acc += geo.g_inv(k, l) * lowered(l, i, j);
        gamma(k, i, j) = acc;
      }

  geo.dgamma.assign(d, Tensor3(d));
  for (int m = 0; m < d; ++m) {
    const MatrixXd dg_inv = -geo.g_inv * geo.dg[m] * geo.g_inv;
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double acc = 0.0;
          for (int l = 0; l < d; ++l) {
            const double dlow =
                0.5 * (ddg[m * d + i](j, l) + ddg[m * d + j](i, l) - ddg[m * d + l](i, j));
            acc += dg_inv(k, l) * lowered(l, i, j) + geo.g_inv(k, l) * dlow;
          }
          geo.dgamma[m](k, i, j) = acc;
        }
  }

  CurvatureData& curv = geo.curvature;
  curv.riemann31 = Tensor4(d);
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double acc = geo.dgamma[i](l, j, k) - geo.dgamma[j](l, i, k);
          for (int m = 0; m < d; ++m) acc += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          curv.riemann31(l, k, i, j) = acc;
        }
  curv.riemann40 = Tensor4(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double acc = 0.0;
          for (int m = 0; m < d; ++m) acc += curv.riemann31(m, k, i, j) * geo.g(m, l);
          curv.riemann40(i, j, k, l) = acc;
        }
  curv.ricci = MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) curv.ricci(j, k) += curv.riemann31(i, k, i, j);
  curv.ricci_op = geo.g_inv * curv.ricci;
  return geo;
}

VectorXd LocalGeometry::R(const VectorXd& x, const VectorXd& y, const VectorXd& z) const {
  VectorXd out = VectorXd::Zero(dim);
  const Tensor4& r = curvature.riemann31;
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      const double xy = x[i] * y[j];
      if (xy == 0.0) continue;
      for (int k = 0; k < dim; ++k) {
        const double w = xy * z[k];
        if (w == 0.0) continue;
        for (int l = 0; l < dim; ++l) out[l] += r(l, k, i, j) * w;
      }
    }
  }
  return out;
}

VectorXd LocalGeometry::nabla_f(const VectorXd& x, const VectorXd& y) const {
  const Tensor3& gamma = connection.gamma;
  MatrixXd nf = MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0.0) continue;
    MatrixXd gi(dim, dim);  // gi(a,c) = Gamma^a_{i c}
    for (int a = 0; a < dim; ++a)
      for (int c = 0; c < dim; ++c) gi(a, c) = gamma(a, i, c);
    nf += x[i] * (df[i] + gi * f - f * gi);
  }
  return nf * y;
}

ConnectionCoefficients christoffel(const ManifoldModel& model, const Point& p) {
  return local_geometry(model, p).connection;
}

CurvatureData riemann(const ManifoldModel& model, const Point& p) { return local_geometry(model, p).curvature; }

VectorXd lie_bracket(const VectorField& a, const VectorField& b, const Point& p) {
  const Jet1 ja = vector_jet(a, p.coords);
  const Jet1 jb = vector_jet(b, p.coords);
  return jb.jacobian * ja.value - ja.jacobian * jb.value;
}

MatrixXd exterior_derivative(const MatrixXd& eta_jacobian, Convention convention) {
  // eta_jacobian(j, i) = d_i eta_j
  const MatrixXd plain = eta_jacobian.transpose() - eta_jacobian;
  return convention == Convention::Plain ? plain : MatrixXd(0.5 * plain);
}

MatrixXd exterior_derivative_1form(const ManifoldModel& model, int eta_index, const Point& p,
                                   Convention convention) {
  if (eta_index < 0 || eta_index >= model.s()) throw std::out_of_range("eta index out of range");
  return exterior_derivative(vector_jet(model.spec().eta[eta_index], p.coords).jacobian, convention);
}

std::vector<Point> sample_points(const ManifoldModel& model, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_points needs count >= 1");
  for (const Interval& iv : model.domain())
    if (!(iv.hi > iv.lo)) throw std::invalid_argument("empty domain box");
  std::mt19937_64 rng(seed);
  std::vector<Point> points;
  points.reserve(count);
  for (int c = 0; c < count; ++c) {
    VectorXd x(model.dim());
    for (int i = 0; i < model.dim(); ++i) {
      const Interval& iv = model.domain()[i];
      std::uniform_real_distribution<double> u(iv.lo, iv.hi);
      x[i] = u(rng);
    }
    points.push_back(Point{std::move(x)});
  }
  return points;
}

std::vector<VectorXd> sample_vectors(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<VectorXd> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal(rng);
    out.push_back(std::move(v));
  }
  return out;
}

double norm_11(const LocalGeometry& geo, const MatrixXd& a) {
  const MatrixXd lt = geo.chol_l.transpose();
  const MatrixXd m = lt * a * lt.inverse();
  return Eigen::JacobiSVD<MatrixXd>(m).singularValues()(0);
}

double norm_02(const LocalGeometry& geo, const MatrixXd& b) {
  const MatrixXd li = geo.chol_l.inverse();
  const MatrixXd m = li * b * li.transpose();
  return Eigen::JacobiSVD<MatrixXd>(m).singularValues()(0);
}

double norm_vec(const LocalGeometry& geo, const VectorXd& v) { return geo.frame(v).norm(); }

double norm_covec(const LocalGeometry& geo, const VectorXd& w) {
  return geo.chol_l.triangularView<Eigen::Lower>().solve(w).norm();
}

}  // namespace fkm
