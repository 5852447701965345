#include "slpkit/socp.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace slp {

int ConeSpec::rows() const {
  int r = orthant;
  for (int q : soc) r += q;
  return r;
}

std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalInfeasible: return "primal_infeasible";
    case SolveStatus::DualInfeasible: return "dual_infeasible";
    case SolveStatus::IterLimit: return "iteration_limit";
  }
  return "unknown";
}

Eigen::VectorXd project_soc(const Eigen::VectorXd& v) {
  if (v.size() < 2) throw std::invalid_argument("project_soc: cone dimension must be >= 2");
  const double t = v(0);
  const double zn = v.tail(v.size() - 1).norm();
  if (zn <= t) return v;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  if (zn <= -t) return out;
  const double h = 0.5 * (t + zn);
  out(0) = h;
  out.tail(v.size() - 1) = v.tail(v.size() - 1) * (h / zn);
  return out;
}

namespace {

void validate_problem(const ConicProblem& p) {
  if (p.c.size() != p.a.cols()) {
    throw std::invalid_argument("solve: objective length does not match column count");
  }
  if (p.b.size() != p.a.rows()) {
    throw std::invalid_argument("solve: right-hand side length does not match row count");
  }
  if (p.cones.orthant < 0) throw std::invalid_argument("solve: negative orthant dimension");
  for (int q : p.cones.soc) {
    if (q < 2) throw std::invalid_argument("solve: SOC dimension must be >= 2");
  }
  if (p.cones.rows() != p.a.rows()) {
    throw std::invalid_argument("solve: cone spec does not cover the constraint rows");
  }
}

// In-block SOC projection without temporaries.
void project_soc_segment(Eigen::Ref<Eigen::VectorXd> seg) {
  const double t = seg(0);
  const double zn = seg.tail(seg.size() - 1).norm();
  if (zn <= t) return;
  if (zn <= -t) {
    seg.setZero();
    return;
  }
  const double h = 0.5 * (t + zn);
  seg.tail(seg.size() - 1) *= h / zn;
  seg(0) = h;
}

struct Scaling {
  Eigen::VectorXd row;  // D, block-uniform over each SOC block
  Eigen::VectorXd col;  // E
  double sb = 1.0;      // extra scalar on b
  double sc = 1.0;      // extra scalar on c
};

// Ruiz-style equilibration. Rows belonging to one SOC block share a single
// scale factor so the scaled slack cone is the same cone.
Scaling equilibrate(Eigen::MatrixXd& a, Eigen::VectorXd& b, Eigen::VectorXd& c,
                    const ConeSpec& cones, bool enabled) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Scaling s;
  s.row = Eigen::VectorXd::Ones(m);
  s.col = Eigen::VectorXd::Ones(n);
  if (!enabled) return s;

  for (int pass = 0; pass < 3; ++pass) {
    for (Eigen::Index i = 0; i < cones.orthant; ++i) {
      const double norm = a.row(i).norm();
      if (norm > 1e-12) {
        const double f = 1.0 / std::sqrt(norm);
        a.row(i) *= f;
        s.row(i) *= f;
      }
    }
    Eigen::Index off = cones.orthant;
    for (int q : cones.soc) {
      const double norm = a.middleRows(off, q).norm() / std::sqrt(static_cast<double>(q));
      if (norm > 1e-12) {
        const double f = 1.0 / std::sqrt(norm);
        a.middleRows(off, q) *= f;
        s.row.segment(off, q) *= f;
      }
      off += q;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double norm = a.col(j).norm();
      if (norm > 1e-12) {
        const double f = 1.0 / std::sqrt(norm);
        a.col(j) *= f;
        s.col(j) *= f;
      }
    }
  }
  b = s.row.asDiagonal() * b;
  c = s.col.asDiagonal() * c;
  const double bn = b.norm();
  const double cn = c.norm();
  s.sb = bn > 1e-12 ? 1.0 / bn : 1.0;
  s.sc = cn > 1e-12 ? 1.0 / cn : 1.0;
  b *= s.sb;
  c *= s.sc;
  return s;
}

}  // namespace

SolveResult solve(const ConicProblem& problem, const SolverSettings& settings) {
  validate_problem(problem);
  const Eigen::Index n = problem.a.cols();
  const Eigen::Index m = problem.a.rows();
  const Eigen::Index dim = n + m + 1;

  Eigen::MatrixXd as = problem.a;
  Eigen::VectorXd bs = problem.b;
  Eigen::VectorXd cs = problem.c;
  const Scaling sc = equilibrate(as, bs, cs, problem.cones, settings.normalize);

  // I + Q with the skew-symmetric embedding matrix
  //   Q = [ 0   A'  c ; -A  0  b ; -c' -b' 0 ].
  Eigen::MatrixXd iq = Eigen::MatrixXd::Identity(dim, dim);
  iq.block(0, n, n, m) = as.transpose();
  iq.block(0, n + m, n, 1) = cs;
  iq.block(n, 0, m, n) = -as;
  iq.block(n, n + m, m, 1) = bs;
  iq.block(n + m, 0, 1, n) = -cs.transpose();
  iq.block(n + m, n, 1, m) = -bs.transpose();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(iq);

  Eigen::VectorXd u = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  u(dim - 1) = 1.0;
  v(dim - 1) = 1.0;
  Eigen::VectorXd ut(dim), w(dim);
  Eigen::VectorXd xdir(n), ydir(m), sdir(m), ax_plus_s(m), aty(n), pres_vec(m), dres_vec(n);

  const double bnorm = problem.b.norm();
  const double cnorm = problem.c.norm();
  const double alpha = settings.relaxation;

  SolveResult res;
  res.x = Eigen::VectorXd::Zero(n);
  int pinf_hits = 0;
  int dinf_hits = 0;

  for (int iter = 1; iter <= settings.max_iterations; ++iter) {
    // (1) linear-system solve against the cached factorization
    ut = u + v;
    ut = lu.permutationP() * ut;
    lu.matrixLU().triangularView<Eigen::UnitLower>().solveInPlace(ut);
    lu.matrixLU().triangularView<Eigen::Upper>().solveInPlace(ut);
    // (2) over-relaxed cone projection onto R^n x K* x R+
    w = alpha * ut + (1.0 - alpha) * u - v;
    u.head(n) = w.head(n);
    u.segment(n, problem.cones.orthant) =
        w.segment(n, problem.cones.orthant).cwiseMax(0.0);
    Eigen::Index off = n + problem.cones.orthant;
    u.segment(off, m - problem.cones.orthant + 1) = w.segment(off, m - problem.cones.orthant + 1);
    for (int q : problem.cones.soc) {
      project_soc_segment(u.segment(off, q));
      off += q;
    }
    u(dim - 1) = std::max(w(dim - 1), 0.0);
    // (3) dual update
    v = u - w;

    // Candidates in original variables (undo the equilibration).
    xdir = sc.col.cwiseProduct(u.head(n));
    ydir = sc.row.cwiseProduct(u.segment(n, m));
    sdir = v.segment(n, m).cwiseQuotient(sc.row);
    ax_plus_s.noalias() = problem.a * xdir;
    ax_plus_s += sdir;
    aty.noalias() = problem.a.transpose() * ydir;

    const double tau = u(dim - 1);
    if (tau > 1e-12) {
      const double px = tau * sc.sb;  // divide x-parts by this
      const double py = tau * sc.sc;
      pres_vec = ax_plus_s / px - problem.b;
      dres_vec = aty / py + problem.c;
      const double pobj = problem.c.dot(xdir) / px;
      const double dobj = -problem.b.dot(ydir) / py;
      const double pres = pres_vec.norm() / (1.0 + bnorm);
      const double dres = dres_vec.norm() / (1.0 + cnorm);
      const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      res.iterations = iter;
      res.residuals = {pres, dres, gap};
      if (pres <= settings.tolerance && dres <= settings.tolerance && gap <= settings.tolerance) {
        res.status = SolveStatus::Optimal;
        res.x = xdir / px;
        res.y = ydir / py;
        res.s = sdir / px;
        res.objective = pobj;
        return res;
      }
    }

    // Primal infeasibility: A'y ~ 0, y in K*, b'y < 0.
    const double bty = problem.b.dot(ydir);
    if (bty < -1e-12 && aty.norm() * bnorm <= settings.infeas_tolerance * (-bty)) {
      if (++pinf_hits >= settings.infeas_consecutive) {
        res.status = SolveStatus::PrimalInfeasible;
        res.certificate = ydir / (-bty);
        res.iterations = iter;
        return res;
      }
    } else {
      pinf_hits = 0;
    }

    // Dual infeasibility: A x + s ~ 0, s in K, c'x < 0 (unbounded ray).
    const double ctx = problem.c.dot(xdir);
    if (ctx < -1e-12 && ax_plus_s.norm() * cnorm <= settings.infeas_tolerance * (-ctx)) {
      if (++dinf_hits >= settings.infeas_consecutive) {
        res.status = SolveStatus::DualInfeasible;
        res.x = xdir / (-ctx);
        res.iterations = iter;
        return res;
      }
    } else {
      dinf_hits = 0;
    }
  }

  res.status = SolveStatus::IterLimit;
  res.iterations = settings.max_iterations;
  return res;
}

void dump_problem(const ConicProblem& problem, std::ostream& os) {
  os << "slpkit conic problem v1\n";
  os << "n " << problem.a.cols() << "\n";
  os << "m " << problem.a.rows() << "\n";
  os << "orthant " << problem.cones.orthant << "\n";
  os << "socs " << problem.cones.soc.size() << "\n";
  os << "soc_dims";
  for (int q : problem.cones.soc) os << " " << q;
  os << "\n";
  const auto fmt = [&os](double x) { os << std::setprecision(17) << x; };
  os << "c\n";
  for (Eigen::Index j = 0; j < problem.c.size(); ++j) {
    if (j) os << " ";
    fmt(problem.c(j));
  }
  os << "\nb\n";
  for (Eigen::Index i = 0; i < problem.b.size(); ++i) {
    if (i) os << " ";
    fmt(problem.b(i));
  }
  os << "\nA\n";
  for (Eigen::Index i = 0; i < problem.a.rows(); ++i) {
    for (Eigen::Index j = 0; j < problem.a.cols(); ++j) {
      if (j) os << " ";
      fmt(problem.a(i, j));
    }
    os << "\n";
  }
}

}  // namespace slp
