#include "regdepth/zonoid_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace regdepth {

// The program min t over (lambda, t) is solved in the equivalent form
//
//   max s  s.t.  sum_i mu_i a_i - s x = 0,  sum_i mu_i - s = 0,
//                0 <= mu_i <= 1,  s >= 0,
//
// with mu = lambda / t and s = 1 / t. The point mu = 0, s = 0 is always
// feasible, so no phase 1 is needed: the d + 1 equality rows start with fixed
// artificial columns (bounds [0, 0]) in the basis. x lies outside the hull
// exactly when the optimum is s = 0; inside it s >= 1 because t <= 1.

ZonoidLpProblem::ZonoidLpProblem(Matrix a_in, Vector x_in) : a(std::move(a_in)), x(std::move(x_in)) {
  if (a.cols() < 1) throw InvalidArgument("zonoid LP needs at least one point");
  if (a.rows() != x.size()) throw InvalidArgument("zonoid LP target dimension mismatch");
  if (!a.allFinite() || !x.allFinite()) throw InvalidArgument("zonoid LP data must be finite");
}

ZonoidLpProblem ZonoidLpProblem::from_cloud(const PointCloud& cloud, const Vector& x) {
  return ZonoidLpProblem(cloud.points().transpose(), x);
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Status : unsigned char { basic, lower, upper };

// Scale factor 2^-e bringing the largest magnitude of a row into [0.5, 1).
// Powers of two keep the scaling exact.
double row_scale(const Eigen::Ref<const Vector>& row) {
  const double mx = row.cwiseAbs().maxCoeff();
  if (!(mx > 0.0)) return 1.0;
  int e = 0;
  std::frexp(mx, &e);
  return std::ldexp(1.0, -e);
}

class BoundedSimplex {
 public:
  BoundedSimplex(const ZonoidLpProblem& p, int max_iterations)
      : n_(p.size()), d_(p.dim()), rows_(p.dim() + 1), cols_(p.size() + 1 + p.dim() + 1),
        max_iterations_(max_iterations) {
    a_ = Matrix::Zero(rows_, cols_);
    for (Index k = 0; k < d_; ++k) {
      a_.row(k).head(n_) = p.a.row(k);
      a_(k, n_) = -p.x[k];
    }
    a_.row(d_).head(n_).setOnes();
    a_(d_, n_) = -1.0;
    scale_.resize(rows_);
    for (Index k = 0; k < rows_; ++k) {
      scale_[k] = row_scale(a_.row(k).head(n_ + 1).transpose());
      a_.row(k).head(n_ + 1) *= scale_[k];
      a_(k, n_ + 1 + k) = 1.0;
    }
    upper_.assign(static_cast<std::size_t>(cols_), 1.0);
    upper_[static_cast<std::size_t>(n_)] = kInf;
    for (Index k = 0; k < rows_; ++k) upper_[static_cast<std::size_t>(n_ + 1 + k)] = 0.0;
    cost_ = Vector::Zero(cols_);
    cost_[n_] = -1.0;  // minimize -s
  }

  void run() {
    tab_ = a_;
    basis_.resize(static_cast<std::size_t>(rows_));
    status_.assign(static_cast<std::size_t>(cols_), Status::lower);
    for (Index k = 0; k < rows_; ++k) {
      basis_[static_cast<std::size_t>(k)] = n_ + 1 + k;
      status_[static_cast<std::size_t>(n_ + 1 + k)] = Status::basic;
    }
    xb_ = Vector::Zero(rows_);
    reduced_ = cost_;

    for (iterations_ = 0;; ++iterations_) {
      if (iterations_ >= max_iterations_) {
        throw SolverFailure("zonoid LP exceeded its iteration cap of " + std::to_string(max_iterations_));
      }
      const Index enter = choose_entering();
      if (enter < 0) break;
      step(enter);
    }
    polish();
  }

  ZonoidLpSolution solution(const ZonoidLpProblem& p) const {
    ZonoidLpSolution out;
    out.iterations = iterations_;
    const double s = value_[static_cast<std::size_t>(n_)];
    if (s > 0.5) {
      Vector mu(n_);
      for (Index i = 0; i < n_; ++i) mu[i] = std::clamp(value_[static_cast<std::size_t>(i)], 0.0, 1.0);
      const double total = mu.sum();
      Vector lambda = mu / total;
      out.feasible = true;
      out.certificate = ZonoidCertificate{lambda, lambda.maxCoeff()};
      return out;
    }
    // Dual of the final basis gives a separating hyperplane.
    Matrix b(rows_, rows_);
    Vector cb(rows_);
    for (Index k = 0; k < rows_; ++k) {
      const Index j = basis_[static_cast<std::size_t>(k)];
      b.col(k) = a_.col(j);
      cb[k] = cost_[j];
    }
    Vector y = b.transpose().fullPivLu().solve(cb);
    Vector yd(d_);
    for (Index k = 0; k < d_; ++k) yd[k] = -y[k] * scale_[k];
    const double nrm = yd.norm();
    if (nrm > 0.0 && std::isfinite(nrm)) {
      out.separating_direction = yd / nrm;
      double sep = kInf;
      for (Index i = 0; i < n_; ++i) {
        sep = std::min(sep, out.separating_direction.dot(Vector(p.a.col(i)) - p.x));
      }
      out.separation = sep;
    } else {
      out.separating_direction = Vector::Zero(d_);
      out.separation = 0.0;
    }
    return out;
  }

 private:
  // Bland: lowest-index eligible column.
  Index choose_entering() const {
    for (Index j = 0; j < cols_; ++j) {
      const auto st = status_[static_cast<std::size_t>(j)];
      if (st == Status::basic || upper_[static_cast<std::size_t>(j)] == 0.0) continue;
      if (st == Status::lower && reduced_[j] < -kCostTol) return j;
      if (st == Status::upper && reduced_[j] > kCostTol) return j;
    }
    return -1;
  }

  void step(Index enter) {
    const double sigma = status_[static_cast<std::size_t>(enter)] == Status::lower ? 1.0 : -1.0;
    double best = upper_[static_cast<std::size_t>(enter)];  // bound flip distance (lower bound is 0)
    Index leave_row = -1;
    Index leave_var = std::numeric_limits<Index>::max();
    bool leave_to_upper = false;
    for (Index r = 0; r < rows_; ++r) {
      const double rate = -sigma * tab_(r, enter);
      if (std::abs(rate) <= kPivotTol) continue;
      const Index var = basis_[static_cast<std::size_t>(r)];
      double limit = kInf;
      bool to_upper = false;
      if (rate < 0.0) {
        limit = std::max(0.0, xb_[r]) / -rate;
      } else if (std::isfinite(upper_[static_cast<std::size_t>(var)])) {
        limit = std::max(0.0, upper_[static_cast<std::size_t>(var)] - xb_[r]) / rate;
        to_upper = true;
      }
      if (limit < best || (limit == best && leave_row >= 0 && var < leave_var)) {
        best = limit;
        leave_row = r;
        leave_var = var;
        leave_to_upper = to_upper;
      }
    }
    if (!std::isfinite(best)) throw SolverFailure("zonoid LP is unbounded; input is inconsistent");

    xb_ -= sigma * best * tab_.col(enter);
    if (leave_row < 0) {
      status_[static_cast<std::size_t>(enter)] = sigma > 0 ? Status::upper : Status::lower;
      return;
    }
    const double enter_value = (sigma > 0 ? 0.0 : upper_[static_cast<std::size_t>(enter)]) + sigma * best;
    status_[static_cast<std::size_t>(leave_var)] = leave_to_upper ? Status::upper : Status::lower;
    status_[static_cast<std::size_t>(enter)] = Status::basic;
    basis_[static_cast<std::size_t>(leave_row)] = enter;
    xb_[leave_row] = enter_value;

    const double piv = tab_(leave_row, enter);
    tab_.row(leave_row) /= piv;
    for (Index r = 0; r < rows_; ++r) {
      if (r == leave_row) continue;
      const double f = tab_(r, enter);
      if (f != 0.0) tab_.row(r) -= f * tab_.row(leave_row);
    }
    const double f = reduced_[enter];
    reduced_ -= f * tab_.row(leave_row).transpose();
    reduced_[enter] = 0.0;
  }

  // Recompute basic values from the original columns to shed pivoting error.
  void polish() {
    value_.assign(static_cast<std::size_t>(cols_), 0.0);
    Vector rhs = Vector::Zero(rows_);
    for (Index j = 0; j < cols_; ++j) {
      if (status_[static_cast<std::size_t>(j)] == Status::upper) {
        value_[static_cast<std::size_t>(j)] = upper_[static_cast<std::size_t>(j)];
        rhs -= upper_[static_cast<std::size_t>(j)] * a_.col(j);
      }
    }
    Matrix b(rows_, rows_);
    for (Index k = 0; k < rows_; ++k) b.col(k) = a_.col(basis_[static_cast<std::size_t>(k)]);
    Eigen::FullPivLU<Matrix> lu(b);
    Vector xb = lu.isInvertible() ? Vector(lu.solve(rhs)) : xb_;
    for (Index k = 0; k < rows_; ++k) value_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(k)])] = xb[k];
  }

  Index n_;
  Index d_;
  Index rows_;
  Index cols_;
  int max_iterations_;
  int iterations_ = 0;
  Matrix a_;
  Matrix tab_;
  Vector scale_;
  Vector cost_;
  Vector reduced_;
  Vector xb_;
  std::vector<double> upper_;
  std::vector<Index> basis_;
  std::vector<Status> status_;
  std::vector<double> value_;
};

}  // namespace

ZonoidLpSolution solve_zonoid_lp(const ZonoidLpProblem& p, const ZonoidLpOptions& opts) {
  const int cap = opts.max_iterations > 0 ? opts.max_iterations : static_cast<int>(50 * (p.size() + p.dim()));
  BoundedSimplex simplex(p, cap);
  simplex.run();
  return simplex.solution(p);
}

CertificateCheck check_certificate(const ZonoidLpProblem& p, const ZonoidCertificate& cert) {
  if (cert.lambda.size() != p.size()) throw InvalidArgument("certificate length does not match problem");
  const Vector recon = p.a * cert.lambda - p.x;
  return CertificateCheck{recon.cwiseAbs().maxCoeff(), std::abs(cert.lambda.sum() - 1.0), cert.lambda.minCoeff(),
                          cert.lambda.maxCoeff()};
}

}  // namespace regdepth
