#include "roughlab/coefficients.hpp"

#include <cmath>
#include <map>

namespace roughlab {

std::vector<Mat> Coefficients::sigma_dy_at(double t, const Vec& y) const {
  if (sigma_dy) return sigma_dy(t, y);
  std::vector<Mat> out(static_cast<std::size_t>(state_dim));
  Vec yp = y, ym = y;
  for (Index m = 0; m < state_dim; ++m) {
    yp(m) += fd_step;
    ym(m) -= fd_step;
    out[static_cast<std::size_t>(m)] = (sigma(t, yp) - sigma(t, ym)) / (2.0 * fd_step);
    yp(m) = y(m);
    ym(m) = y(m);
  }
  return out;
}

Mat Coefficients::drift_dy_at(double t, const Vec& y) const {
  if (drift_dy) return drift_dy(t, y);
  Mat out(state_dim, state_dim);
  Vec yp = y, ym = y;
  for (Index m = 0; m < state_dim; ++m) {
    yp(m) += fd_step;
    ym(m) -= fd_step;
    out.col(m) = (drift(t, yp) - drift(t, ym)) / (2.0 * fd_step);
    yp(m) = y(m);
    ym(m) = y(m);
  }
  return out;
}

Vec second_order_contraction(const std::vector<Mat>& dsig, const Mat& V, const Mat& Xi) {
  require(!dsig.empty() && static_cast<Index>(dsig.size()) == V.rows(),
          "one sigma partial per state component required");
  const Index k = V.rows();
  const Index kr = dsig[0].rows();
  Vec out = Vec::Zero(kr);
  for (Index m = 0; m < k; ++m) {
    // sum_{a,b} dsig[m](r,b) V(m,a) Xi(a,b) = dsig[m] row r dot (V row m * Xi)
    Eigen::RowVectorXd vXi = V.row(m) * Xi;  // entry b = sum_a V(m,a) Xi(a,b)
    for (Index r = 0; r < kr; ++r) out(r) += dsig[static_cast<std::size_t>(m)].row(r).dot(vXi);
  }
  return out;
}

DerivativeCheckReport check_derivatives(const Coefficients& c, const std::vector<Vec>& probes,
                                        double t) {
  DerivativeCheckReport rep;
  if (!c.sigma_dy && !c.drift_dy) {
    rep.pass = true;  // nothing analytic to check
    return rep;
  }
  const double h = c.fd_step;
  for (const Vec& y : probes) {
    if (c.sigma_dy) {
      std::vector<Mat> ana = c.sigma_dy(t, y);
      Vec yp = y, ym = y;
      for (Index m = 0; m < c.state_dim; ++m) {
        yp(m) += h;
        ym(m) -= h;
        Mat fd = (c.sigma(t, yp) - c.sigma(t, ym)) / (2.0 * h);
        double scale = std::max(1.0, fd.norm());
        rep.max_rel_err = std::max(rep.max_rel_err, (ana[static_cast<std::size_t>(m)] - fd).norm() / scale);
        yp(m) = y(m);
        ym(m) = y(m);
      }
    }
    if (c.drift_dy) {
      Mat ana = c.drift_dy(t, y);
      Mat fd = Coefficients{c.state_dim, c.driver_dim, c.drift, c.sigma, nullptr, nullptr, c.fd_step}
                   .drift_dy_at(t, y);
      double scale = std::max(1.0, fd.norm());
      rep.max_rel_err = std::max(rep.max_rel_err, (ana - fd).norm() / scale);
    }
  }
  rep.pass = rep.max_rel_err <= 1e-4;
  return rep;
}

namespace {

double get_param(const std::map<std::string, double>& m, const std::string& key, double dflt) {
  auto it = m.find(key);
  return it == m.end() ? dflt : it->second;
}

}  // namespace

Coefficients make_coefficients(const std::string& kind, Index state_dim, Index driver_dim,
                               const std::vector<std::pair<std::string, double>>& params) {
  std::map<std::string, double> pm(params.begin(), params.end());
  Coefficients c;
  c.state_dim = state_dim;
  c.driver_dim = driver_dim;
  const Index k = state_dim, d = driver_dim;

  if (kind == "linear") {
    // b = drift_lin * y + drift_const, sigma col j = sigma_lin * y + sigma_const
    double bl = get_param(pm, "drift_lin", 0.0);
    double b0 = get_param(pm, "drift_const", 0.0);
    double sl = get_param(pm, "sigma_lin", 1.0);
    double s0 = get_param(pm, "sigma_const", 0.0);
    c.drift = [=](double, const Vec& y) { return Vec(bl * y + Vec::Constant(k, b0)); };
    c.sigma = [=](double, const Vec& y) {
      Mat s(k, d);
      for (Index j = 0; j < d; ++j) s.col(j) = sl * y + Vec::Constant(k, s0);
      return s;
    };
    c.sigma_dy = [=](double, const Vec&) {
      std::vector<Mat> ds(static_cast<std::size_t>(k), Mat::Zero(k, d));
      for (Index m = 0; m < k; ++m) ds[static_cast<std::size_t>(m)].row(m).setConstant(sl);
      return ds;
    };
    c.drift_dy = [=](double, const Vec&) { return Mat(bl * Mat::Identity(k, k)); };
    return c;
  }

  if (kind == "rotation") {
    require(state_dim == 2 && driver_dim == 1, "rotation coefficients need k = 2, d = 1");
    double omega = get_param(pm, "omega", 1.0);
    double bl = get_param(pm, "drift_lin", 0.0);
    Mat J(2, 2);
    J << 0.0, -1.0, 1.0, 0.0;
    c.drift = [=](double, const Vec& y) { return Vec(bl * y); };
    c.sigma = [=](double, const Vec& y) { return Mat(omega * J * y); };
    c.sigma_dy = [=](double, const Vec&) {
      std::vector<Mat> ds(2, Mat::Zero(2, 1));
      // d(sigma)/dy_m col 0 = omega * J col m
      ds[0].col(0) = omega * J.col(0);
      ds[1].col(0) = omega * J.col(1);
      return ds;
    };
    c.drift_dy = [=](double, const Vec&) { return Mat(bl * Mat::Identity(2, 2)); };
    return c;
  }

  if (kind == "tanh") {
    double amp = get_param(pm, "amp", 1.0);
    double off = get_param(pm, "off", 0.2);
    double b_amp = get_param(pm, "b_amp", 0.0);
    double b_shift = get_param(pm, "b_shift", 0.0);
    double u0 = get_param(pm, "u", 1.0);
    double c0 = get_param(pm, "c", 0.3);
    c.drift = [=](double, const Vec& y) {
      Vec b(k);
      for (Index r = 0; r < k; ++r) b(r) = b_amp * std::tanh(y(r) + b_shift);
      return b;
    };
    auto inner = [=](const Vec& y, Index r, Index j) {
      return u0 * y.sum() / static_cast<double>(k) + c0 * (1.0 + 0.5 * static_cast<double>(r + j));
    };
    c.sigma = [=](double, const Vec& y) {
      Mat s(k, d);
      for (Index r = 0; r < k; ++r)
        for (Index j = 0; j < d; ++j) s(r, j) = amp * std::tanh(inner(y, r, j)) + off;
      return s;
    };
    c.sigma_dy = [=](double, const Vec& y) {
      std::vector<Mat> ds(static_cast<std::size_t>(k), Mat::Zero(k, d));
      for (Index m = 0; m < k; ++m)
        for (Index r = 0; r < k; ++r)
          for (Index j = 0; j < d; ++j) {
            double z = std::tanh(inner(y, r, j));
            ds[static_cast<std::size_t>(m)](r, j) =
                amp * (1.0 - z * z) * u0 / static_cast<double>(k);
          }
      return ds;
    };
    c.drift_dy = [=](double, const Vec& y) {
      Mat g = Mat::Zero(k, k);
      for (Index r = 0; r < k; ++r) {
        double z = std::tanh(y(r) + b_shift);
        g(r, r) = b_amp * (1.0 - z * z);
      }
      return g;
    };
    return c;
  }

  if (kind == "constant") {
    double s0 = get_param(pm, "sigma_const", 1.0);
    double b0 = get_param(pm, "drift_const", 0.0);
    c.drift = [=](double, const Vec&) { return Vec(Vec::Constant(k, b0)); };
    c.sigma = [=](double, const Vec&) { return Mat(Mat::Constant(k, d, s0)); };
    c.sigma_dy = [=](double, const Vec&) {
      return std::vector<Mat>(static_cast<std::size_t>(k), Mat::Zero(k, d));
    };
    c.drift_dy = [=](double, const Vec&) { return Mat(Mat::Zero(k, k)); };
    return c;
  }

  throw std::invalid_argument("unknown coefficient kind: " + kind);
}

}  // namespace roughlab
