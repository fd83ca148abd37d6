// Dense conic interior-point method for the problems built by SdpProblem.
//
// Standard form (x free, s in the cone K = R^l_+ x S^m1_+ x ... x S^mk_+):
//
//   minimize    c'x
//   subject to  G x + s = h,  A x = b,  s in K
//
// solved on the homogeneous self-dual embedding, so infeasibility and
// unboundedness surface as certificates instead of divergence. Iterates are
// kept in Nesterov-Todd scaled form: the scaling W and the scaled point
// lambda = W z = W^{-T} s are updated together after every step, which keeps
// s and z consistent even when both approach the boundary of the cone.
//
// Cone vectors use unpacked storage: the linear part first, then each PSD
// block as a column-major m*m matrix. For symmetric blocks the plain
// Euclidean inner product of two unpacked vectors equals tr(UV).

#include "bwkit/sdp_solver.hpp"

#include "bwkit/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>

namespace bwkit::sdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStepFraction = 0.99;

struct ConeDims {
  Index linear = 0;
  std::vector<Index> psd;

  Index size() const {
    Index n = linear;
    for (Index m : psd) n += m * m;
    return n;
  }
  Index degree() const {
    Index n = linear;
    for (Index m : psd) n += m;
    return n;
  }
};

struct ConicProgram {
  Vector c;
  double c0 = 0.0;
  Matrix G;
  Vector h;
  Matrix A;
  Vector b;
  ConeDims dims;
};

ConicProgram compile(const SdpProblem& p) {
  ConicProgram cp;
  const Index n = p.num_slots();
  cp.dims.linear = static_cast<Index>(p.linear_ineqs().size());
  for (const PsdConstraint& blk : p.psd_blocks()) cp.dims.psd.push_back(blk.expr.dim());
  const Index rows = cp.dims.size();

  cp.c = Vector::Zero(n);
  for (const auto& [s, v] : p.objective().coefficients()) cp.c(s) += v;
  cp.c0 = p.objective().constant();

  cp.G = Matrix::Zero(rows, n);
  cp.h = Vector::Zero(rows);
  Index row = 0;
  for (const LinearConstraint& lc : p.linear_ineqs()) {
    // expr <= rhs  ->  s = (rhs - const) - a'x
    // expr >= rhs  ->  s = (const - rhs) + a'x
    const double sign = lc.direction == Direction::less_equal ? 1.0 : -1.0;
    cp.h(row) = sign * (lc.rhs - lc.expr.constant());
    for (const auto& [s, v] : lc.expr.coefficients()) cp.G(row, s) += sign * v;
    ++row;
  }
  for (const PsdConstraint& blk : p.psd_blocks()) {
    const Index m = blk.expr.dim();
    Eigen::Map<Matrix>(cp.h.data() + row, m, m) = blk.expr.constant();
    for (const auto& [s, list] : blk.expr.terms())
      for (const MatrixTerm& t : list) cp.G(row + t.row + t.col * m, s) -= t.coeff;
    row += m * m;
  }

  const Index neq = static_cast<Index>(p.linear_eqs().size());
  cp.A = Matrix::Zero(neq, n);
  cp.b = Vector::Zero(neq);
  for (Index i = 0; i < neq; ++i) {
    const LinearConstraint& lc = p.linear_eqs()[static_cast<std::size_t>(i)];
    cp.b(i) = lc.rhs - lc.expr.constant();
    for (const auto& [s, v] : lc.expr.coefficients()) cp.A(i, s) += v;
  }
  return cp;
}

// ---------------------------------------------------------------------------
// Cone algebra

using BlockMap = Eigen::Map<Matrix>;
using ConstBlockMap = Eigen::Map<const Matrix>;

template <typename F>
void for_each_block(const ConeDims& dims, F&& f) {
  Index off = dims.linear;
  Index loff = dims.linear;
  for (std::size_t k = 0; k < dims.psd.size(); ++k) {
    const Index m = dims.psd[k];
    f(k, m, off, loff);
    off += m * m;
    loff += m;
  }
}

Vector identity_cone(const ConeDims& dims) {
  Vector e = Vector::Zero(dims.size());
  e.head(dims.linear).setOnes();
  for_each_block(dims, [&](std::size_t, Index m, Index off, Index) {
    BlockMap(e.data() + off, m, m) = Matrix::Identity(m, m);
  });
  return e;
}

// Embeds a lambda vector (linear part + block diagonals) as a cone vector.
Vector diag_to_cone(const ConeDims& dims, const Vector& lam) {
  Vector u = Vector::Zero(dims.size());
  u.head(dims.linear) = lam.head(dims.linear);
  for_each_block(dims, [&](std::size_t, Index m, Index off, Index loff) {
    BlockMap(u.data() + off, m, m).diagonal() = lam.segment(loff, m);
  });
  return u;
}

void symmetrize_blocks(const ConeDims& dims, Vector& u) {
  for_each_block(dims, [&](std::size_t, Index m, Index off, Index) {
    BlockMap b(u.data() + off, m, m);
    const Matrix sym = 0.5 * (b + b.transpose());
    b = sym;
  });
}

// lambda o u
Vector lam_prod(const ConeDims& dims, const Vector& lam, const Vector& u) {
  Vector out(u.size());
  out.head(dims.linear) = lam.head(dims.linear).cwiseProduct(u.head(dims.linear));
  for_each_block(dims, [&](std::size_t, Index m, Index off, Index loff) {
    ConstBlockMap ub(u.data() + off, m, m);
    BlockMap ob(out.data() + off, m, m);
    for (Index j = 0; j < m; ++j)
      for (Index i = 0; i < m; ++i) ob(i, j) = 0.5 * (lam(loff + i) + lam(loff + j)) * ub(i, j);
  });
  return out;
}

// Solves lambda o v = u for v.
Vector lam_div(const ConeDims& dims, const Vector& lam, const Vector& u) {
  Vector out(u.size());
  out.head(dims.linear) = u.head(dims.linear).cwiseQuotient(lam.head(dims.linear));
  for_each_block(dims, [&](std::size_t, Index m, Index off, Index loff) {
    ConstBlockMap ub(u.data() + off, m, m);
    BlockMap ob(out.data() + off, m, m);
    for (Index j = 0; j < m; ++j)
      for (Index i = 0; i < m; ++i) ob(i, j) = 2.0 * ub(i, j) / (lam(loff + i) + lam(loff + j));
  });
  return out;
}

// Jordan product u o v.
Vector cone_prod(const ConeDims& dims, const Vector& u, const Vector& v) {
  Vector out(u.size());
  out.head(dims.linear) = u.head(dims.linear).cwiseProduct(v.head(dims.linear));
  for_each_block(dims, [&](std::size_t, Index m, Index off, Index) {
    ConstBlockMap ub(u.data() + off, m, m);
    ConstBlockMap vb(v.data() + off, m, m);
    BlockMap(out.data() + off, m, m) = 0.5 * (ub * vb + vb * ub);
  });
  return out;
}

// Largest alpha with lambda + alpha * du in the cone (kInf if unbounded).
double max_step(const ConeDims& dims, const Vector& lam, const Vector& du) {
  double alpha = kInf;
  for (Index i = 0; i < dims.linear; ++i)
    if (du(i) < 0.0) alpha = std::min(alpha, -lam(i) / du(i));
  for_each_block(dims, [&](std::size_t, Index m, Index off, Index loff) {
    const Vector isq = lam.segment(loff, m).cwiseSqrt().cwiseInverse();
    ConstBlockMap db(du.data() + off, m, m);
    Matrix scaled = isq.asDiagonal() * db * isq.asDiagonal();
    scaled = 0.5 * (scaled + scaled.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(scaled, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues()(0);
    if (emin < 0.0) alpha = std::min(alpha, -1.0 / emin);
  });
  return alpha;
}

// Nesterov-Todd scaling W with W z = W^{-T} s = lambda.
//   linear part: W = diag(d)
//   PSD block:   W(U) = r' U r,  W^{-T}(U) = rti' U rti,  rti = r^{-T}
struct Scaling {
  Vector d;
  std::vector<Matrix> r;
  std::vector<Matrix> rti;
  Vector lambda;

  static Scaling identity(const ConeDims& dims) {
    Scaling w;
    w.d = Vector::Ones(dims.linear);
    for (Index m : dims.psd) {
      w.r.push_back(Matrix::Identity(m, m));
      w.rti.push_back(Matrix::Identity(m, m));
    }
    w.lambda = Vector::Ones(dims.degree());
    return w;
  }
};

enum class ScaleOp { W, WT, Winv, WinvT };

Vector apply_scaling(const ConeDims& dims, const Scaling& w, ScaleOp op, const Vector& u) {
  Vector out(u.size());
  const bool inverse = op == ScaleOp::Winv || op == ScaleOp::WinvT;
  out.head(dims.linear) =
      inverse ? u.head(dims.linear).cwiseQuotient(w.d) : Vector(u.head(dims.linear).cwiseProduct(w.d));
  for_each_block(dims, [&](std::size_t k, Index m, Index off, Index) {
    ConstBlockMap ub(u.data() + off, m, m);
    BlockMap ob(out.data() + off, m, m);
    switch (op) {
      case ScaleOp::W:
        ob = w.r[k].transpose() * ub * w.r[k];
        break;
      case ScaleOp::WT:
        ob = w.r[k] * ub * w.r[k].transpose();
        break;
      case ScaleOp::Winv:
        ob = w.rti[k] * ub * w.rti[k].transpose();
        break;
      case ScaleOp::WinvT:
        ob = w.rti[k].transpose() * ub * w.rti[k];
        break;
    }
  });
  return out;
}

// Moves the scaling to the new point whose scaled coordinates (in the current
// scaling) are s_t = W^{-T} s_new and z_t = W z_new. Returns false when either
// point has left the interior of the cone.
bool rescale(const ConeDims& dims, Scaling& w, const Vector& s_t, const Vector& z_t) {
  for (Index i = 0; i < dims.linear; ++i) {
    if (!(s_t(i) > 0.0) || !(z_t(i) > 0.0)) return false;
    w.d(i) *= std::sqrt(s_t(i) / z_t(i));
    w.lambda(i) = std::sqrt(s_t(i) * z_t(i));
  }
  bool ok = true;
  for_each_block(dims, [&](std::size_t k, Index m, Index off, Index loff) {
    if (!ok) return;
    Matrix sb = ConstBlockMap(s_t.data() + off, m, m);
    Matrix zb = ConstBlockMap(z_t.data() + off, m, m);
    Eigen::LLT<Matrix> ls(0.5 * (sb + sb.transpose()));
    Eigen::LLT<Matrix> lz(0.5 * (zb + zb.transpose()));
    if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) {
      ok = false;
      return;
    }
    const Matrix Ls = ls.matrixL();
    const Matrix Lz = lz.matrixL();
    Eigen::JacobiSVD<Matrix> svd(Lz.transpose() * Ls, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector sv = svd.singularValues();
    if (!(sv.minCoeff() > 0.0)) {
      ok = false;
      return;
    }
    const Vector isq = sv.cwiseSqrt().cwiseInverse();
    w.r[k] = w.r[k] * Ls * svd.matrixV() * isq.asDiagonal();
    w.rti[k] = w.rti[k] * Lz * svd.matrixU() * isq.asDiagonal();
    w.lambda.segment(loff, m) = sv;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// KKT system
//
//   [ 0  A'  G'    ] [ux]   [bx]
//   [ A  0   0     ] [uy] = [by]
//   [ G  0  -W'W   ] [uz]   [bz]
//
// Eliminating uz leaves (H + A'A) ux + A' uy = bx + Gh' W^{-T} bz + A' by with
// Gh = W^{-T} G and H = Gh' Gh; uy then comes from the Schur complement on A.
// The solve returns W uz rather than uz.

class KktSolver {
 public:
  KktSolver(const ConicProgram& cp, const Scaling& w) : cp_(cp), w_(w) {
    const Index n = cp.G.cols();
    gh_.resize(cp.G.rows(), n);
    for (Index j = 0; j < n; ++j) gh_.col(j) = apply_scaling(cp.dims, w, ScaleOp::WinvT, cp.G.col(j));
    Matrix h = gh_.transpose() * gh_;
    h.noalias() += cp.A.transpose() * cp.A;
    hfac_.compute(h);
    ok_ = hfac_.info() == Eigen::Success && hfac_.isPositive() && (hfac_.vectorD().array() > 0.0).all();
    if (ok_ && cp.A.rows() > 0) {
      const Matrix hinv_at = hfac_.solve(cp.A.transpose());
      sfac_.compute(cp.A * hinv_at);
      ok_ = sfac_.info() == Eigen::Success && (sfac_.vectorD().array() > 0.0).all();
    }
  }

  bool ok() const { return ok_; }
  const Matrix& scaled_g() const { return gh_; }

  void solve(const Vector& bx, const Vector& by, const Vector& bz, Vector& ux, Vector& uy, Vector& uz_scaled) const {
    const Vector bzs = apply_scaling(cp_.dims, w_, ScaleOp::WinvT, bz);
    Vector rhs = bx + gh_.transpose() * bzs;
    if (cp_.A.rows() > 0) {
      rhs.noalias() += cp_.A.transpose() * by;
      const Vector hr = hfac_.solve(rhs);
      uy = sfac_.solve(cp_.A * hr - by);
      ux = hfac_.solve(rhs - cp_.A.transpose() * uy);
    } else {
      uy = Vector::Zero(0);
      ux = hfac_.solve(rhs);
    }
    uz_scaled = gh_ * ux - bzs;
  }

 private:
  const ConicProgram& cp_;
  const Scaling& w_;
  Matrix gh_;
  Eigen::LDLT<Matrix> hfac_;
  Eigen::LDLT<Matrix> sfac_;
  bool ok_ = false;
};

// ---------------------------------------------------------------------------
// Newton system on the embedding. Unknowns are kept in scaled form for s and
// z: ds_t = W^{-T} ds, dz_t = W dz.

struct Step {
  Vector x, y, z, s;  // z and s scaled
  double tau = 0.0;
  double kappa = 0.0;

  void axpy(double a, const Step& o) {
    x += a * o.x;
    y += a * o.y;
    z += a * o.z;
    s += a * o.s;
    tau += a * o.tau;
    kappa += a * o.kappa;
  }
};

// Right-hand side of
//   A'dy + G'dz + c dtau             = rx
//   A dx - b dtau                    = ry
//   G dx + ds - h dtau               = rz
//   dkappa + c'dx + b'dy + h'dz      = rtau
//   lambda o (ds_t + dz_t)           = rc   (scaled)
//   kappa dtau + tau dkappa          = rkappa
struct NewtonRhs {
  Vector x, y, z, c;
  double tau = 0.0;
  double kappa = 0.0;
};

class NewtonSolver {
 public:
  NewtonSolver(const ConicProgram& cp, const Scaling& w, const KktSolver& kkt, double tau, double kappa)
      : cp_(cp), w_(w), kkt_(kkt), tau_(tau), kappa_(kappa) {
    th_ = apply_scaling(cp.dims, w, ScaleOp::WinvT, cp.h);
    kkt.solve(-cp.c, cp.b, cp.h, x1_, y1_, z1_);
    den_ = cp.c.dot(x1_) + cp.b.dot(y1_) + th_.dot(z1_) - kappa / tau;
  }

  bool ok() const { return std::isfinite(den_) && den_ != 0.0; }

  Step solve(const NewtonRhs& r, int refinement) const {
    Step d = solve_once(r);
    for (int i = 0; i < refinement; ++i) {
      const NewtonRhs res = residual(r, d);
      d.axpy(1.0, solve_once(res));
    }
    return d;
  }

 private:
  Step solve_once(const NewtonRhs& r) const {
    const ConeDims& dims = cp_.dims;
    const Vector rc_div = lam_div(dims, w_.lambda, r.c);
    const Vector bz = r.z - apply_scaling(dims, w_, ScaleOp::WT, rc_div);
    Step d;
    kkt_.solve(r.x, r.y, bz, d.x, d.y, d.z);
    const double num = r.tau - r.kappa / tau_ - (cp_.c.dot(d.x) + cp_.b.dot(d.y) + th_.dot(d.z));
    d.tau = num / den_;
    d.x += d.tau * x1_;
    d.y += d.tau * y1_;
    d.z += d.tau * z1_;
    d.kappa = (r.kappa - kappa_ * d.tau) / tau_;
    d.s = rc_div - d.z;
    return d;
  }

  // rhs - L(d)
  NewtonRhs residual(const NewtonRhs& r, const Step& d) const {
    const ConeDims& dims = cp_.dims;
    const Matrix& gh = kkt_.scaled_g();
    NewtonRhs e;
    e.x = r.x - (cp_.A.transpose() * d.y + gh.transpose() * d.z + cp_.c * d.tau);
    e.y = r.y - (cp_.A * d.x - cp_.b * d.tau);
    e.z = r.z - (cp_.G * d.x + apply_scaling(dims, w_, ScaleOp::WT, d.s) - cp_.h * d.tau);
    e.tau = r.tau - (d.kappa + cp_.c.dot(d.x) + cp_.b.dot(d.y) + th_.dot(d.z));
    e.c = r.c - lam_prod(dims, w_.lambda, d.s + d.z);
    e.kappa = r.kappa - (kappa_ * d.tau + tau_ * d.kappa);
    return e;
  }

  const ConicProgram& cp_;
  const Scaling& w_;
  const KktSolver& kkt_;
  double tau_;
  double kappa_;
  Vector th_;
  Vector x1_, y1_, z1_;
  double den_ = 0.0;
};

// Step to the boundary along d, capped at 1.
double step_to_boundary(const ConeDims& dims, const Vector& lam, const Step& d, double tau, double kappa) {
  double a = std::min(max_step(dims, lam, d.s), max_step(dims, lam, d.z));
  if (d.tau < 0.0) a = std::min(a, -tau / d.tau);
  if (d.kappa < 0.0) a = std::min(a, -kappa / d.kappa);
  return a;
}

// Shifts u into the interior when its smallest eigenvalue is not safely
// positive. Mirrors the usual cold start of cone solvers.
void shift_into_cone(const ConeDims& dims, Vector& u) {
  double lmin = kInf;
  for (Index i = 0; i < dims.linear; ++i) lmin = std::min(lmin, u(i));
  for_each_block(dims, [&](std::size_t, Index m, Index off, Index) {
    Matrix b = ConstBlockMap(u.data() + off, m, m);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (b + b.transpose()), Eigen::EigenvaluesOnly);
    lmin = std::min(lmin, es.eigenvalues()(0));
  });
  if (dims.degree() == 0) return;
  if (lmin <= 1e-8 * std::max(1.0, u.norm())) u += (1.0 - lmin) * identity_cone(dims);
}

SdpSolution finish(const SdpProblem& p, const ConicProgram& cp, SolveStatus status, const Vector& x, const Vector& z,
                   double scale, const Residuals& res, int iters, std::string message) {
  SdpSolution sol;
  sol.status = status;
  sol.slots = x / scale;
  sol.objective_value = cp.c.dot(sol.slots) + cp.c0;
  sol.residuals = res;
  sol.iterations = iters;
  sol.message = std::move(message);
  for (const Variable& v : p.variables()) sol.assignments.emplace(v.id, p.extract(v, sol.slots));
  for_each_block(cp.dims, [&](std::size_t, Index m, Index off, Index) {
    Matrix zb = ConstBlockMap(z.data() + off, m, m) / scale;
    sol.psd_duals.push_back(0.5 * (zb + zb.transpose()));
  });
  return sol;
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal:
      return "optimal";
    case SolveStatus::infeasible:
      return "infeasible";
    case SolveStatus::unbounded:
      return "unbounded";
    case SolveStatus::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

SolverSettings settings_from_environment(SolverSettings base) {
  if (const char* env = std::getenv("BWKIT_SOLVER_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || !(tol > 0.0) || !std::isfinite(tol))
      throw InputError(std::string("BWKIT_SOLVER_TOL is not a positive number: ") + env);
    base.feas_tol = tol;
    base.gap_tol = tol;
  }
  return base;
}

const Matrix& SdpSolution::value(const Variable& v) const {
  auto it = assignments.find(v.id);
  if (it == assignments.end()) throw UnknownVariable("solution has no value for variable '" + v.name + "'");
  return it->second;
}

SdpSolution InteriorPointBackend::solve(const SdpProblem& problem, const SolverSettings& settings) const {
  const ConicProgram cp = compile(problem);
  const ConeDims& dims = cp.dims;
  const Index n = cp.c.size();
  const double deg = static_cast<double>(dims.degree());

  Residuals res;
  const Vector zero_z = Vector::Zero(dims.size());
  if (n == 0) {
    return finish(problem, cp, SolveStatus::numerical_failure, Vector::Zero(0), zero_z, 1.0, res, 0,
                  "problem has no variables");
  }
  if (cp.A.rows() > n) {
    return finish(problem, cp, SolveStatus::numerical_failure, Vector::Zero(n), zero_z, 1.0, res, 0,
                  "more equality constraints than variables");
  }

  const double resx0 = std::max(1.0, cp.c.norm());
  const double resy0 = std::max(1.0, cp.b.norm());
  const double resz0 = std::max(1.0, cp.h.norm());

  // Cold start from least-squares primal and minimum-norm dual points.
  Scaling w = Scaling::identity(dims);
  Vector x, y, s, z;
  {
    KktSolver kkt(cp, w);
    if (!kkt.ok()) {
      return finish(problem, cp, SolveStatus::numerical_failure, Vector::Zero(n), zero_z, 1.0, res, 0,
                    "rank deficient constraints: [G; A] must have full column rank");
    }
    Vector dummy;
    kkt.solve(Vector::Zero(n), cp.b, cp.h, x, dummy, s);
    s = -s;
    kkt.solve(-cp.c, Vector::Zero(cp.b.size()), Vector::Zero(dims.size()), dummy, y, z);
    symmetrize_blocks(dims, s);
    symmetrize_blocks(dims, z);
    shift_into_cone(dims, s);
    shift_into_cone(dims, z);
  }
  double tau = 1.0;
  double kappa = 1.0;
  {
    Scaling w0 = Scaling::identity(dims);
    if (!rescale(dims, w0, s, z)) {
      return finish(problem, cp, SolveStatus::numerical_failure, Vector::Zero(n), zero_z, 1.0, res, 0,
                    "could not build an interior starting point");
    }
    w = std::move(w0);
  }

  std::string message;
  int iter = 0;
  for (;; ++iter) {
    // Unscaled cone iterates from the scaled point.
    const Vector lam_cone = diag_to_cone(dims, w.lambda);
    s = apply_scaling(dims, w, ScaleOp::WT, lam_cone);
    z = apply_scaling(dims, w, ScaleOp::Winv, lam_cone);

    const Vector hrx = -(cp.A.transpose() * y + cp.G.transpose() * z);
    const Vector hry = cp.A * x;
    const Vector hrz = s + cp.G * x;
    const Vector rx = -hrx + cp.c * tau;  // A'y + G'z + c tau
    const Vector ry = hry - cp.b * tau;   // A x - b tau
    const Vector rz = hrz - cp.h * tau;   // G x + s - h tau
    const double cx = cp.c.dot(x);
    const double by = cp.b.dot(y);
    const double hz = cp.h.dot(z);
    const double rt = kappa + cx + by + hz;

    const double sz = w.lambda.squaredNorm();
    const double pcost = cx / tau;
    const double dcost = -(by + hz) / tau;
    res.absolute_gap = sz / (tau * tau);
    double relgap = kInf;
    if (pcost < 0.0) {
      relgap = res.absolute_gap / -pcost;
    } else if (dcost > 0.0) {
      relgap = res.absolute_gap / dcost;
    }
    res.gap = std::min(res.absolute_gap, relgap);
    res.primal = std::max(ry.norm() / tau / resy0, rz.norm() / tau / resz0);
    res.dual = rx.norm() / tau / resx0;

    if (res.primal <= settings.feas_tol && res.dual <= settings.feas_tol && res.gap <= settings.gap_tol) {
      SdpSolution sol = finish(problem, cp, SolveStatus::optimal, x, z, tau, res, iter, "optimal");
      sol.dual_value = dcost + cp.c0;
      return sol;
    }
    if (by + hz < 0.0 && hrx.norm() / resx0 / -(by + hz) <= settings.feas_tol) {
      return finish(problem, cp, SolveStatus::infeasible, x, z, tau, res, iter, "primal infeasibility certificate");
    }
    if (cx < 0.0 && std::max(hry.norm() / resy0, hrz.norm() / resz0) / -cx <= settings.feas_tol) {
      return finish(problem, cp, SolveStatus::unbounded, x, z, tau, res, iter, "dual infeasibility certificate");
    }
    if (iter >= settings.max_iterations) {
      message = "iteration limit reached";
      break;
    }

    const KktSolver kkt(cp, w);
    if (!kkt.ok()) {
      message = "KKT factorization failed";
      break;
    }
    const NewtonSolver newton(cp, w, kkt, tau, kappa);
    if (!newton.ok()) {
      message = "embedding elimination failed";
      break;
    }

    const double mu = (sz + tau * kappa) / (deg + 1.0);
    const Vector lam_sq = lam_prod(dims, w.lambda, lam_cone);

    // Predictor.
    NewtonRhs rhs;
    rhs.x = -rx;
    rhs.y = -ry;
    rhs.z = -rz;
    rhs.tau = -rt;
    rhs.c = -lam_sq;
    rhs.kappa = -tau * kappa;
    const Step aff = newton.solve(rhs, settings.refinement_steps);
    const double alpha_aff = std::min(1.0, step_to_boundary(dims, w.lambda, aff, tau, kappa));
    const double sigma = std::pow(1.0 - alpha_aff, 3);

    // Corrector.
    rhs.x = -(1.0 - sigma) * rx;
    rhs.y = -(1.0 - sigma) * ry;
    rhs.z = -(1.0 - sigma) * rz;
    rhs.tau = -(1.0 - sigma) * rt;
    rhs.c = -lam_sq + sigma * mu * identity_cone(dims) - cone_prod(dims, aff.s, aff.z);
    rhs.kappa = -tau * kappa + sigma * mu - aff.tau * aff.kappa;
    const Step d = newton.solve(rhs, settings.refinement_steps);
    const double alpha = std::min(1.0, kStepFraction * step_to_boundary(dims, w.lambda, d, tau, kappa));
    if (!(alpha > 1e-12)) {
      message = "step length collapsed";
      break;
    }

    x += alpha * d.x;
    y += alpha * d.y;
    tau += alpha * d.tau;
    kappa += alpha * d.kappa;
    Vector s_t = lam_cone + alpha * d.s;
    Vector z_t = lam_cone + alpha * d.z;
    symmetrize_blocks(dims, s_t);
    symmetrize_blocks(dims, z_t);
    if (!rescale(dims, w, s_t, z_t) || !(tau > 0.0) || !(kappa > 0.0)) {
      message = "iterate left the cone";
      break;
    }
  }
  return finish(problem, cp, SolveStatus::numerical_failure, x, z, tau, res, iter, message);
}

const SdpBackend& default_backend() {
  static const InteriorPointBackend backend;
  return backend;
}

SdpSolution solve(const SdpProblem& problem, const SolverSettings& settings) {
  return default_backend().solve(problem, settings);
}

}  // namespace bwkit::sdp
