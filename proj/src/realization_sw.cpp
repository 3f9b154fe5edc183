#include <specnp/realization_sw.hpp>

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include <specnp/gamma_core.hpp>
#include <specnp/linalg.hpp>
#include <specnp/polynomial.hpp>
#include <specnp/problem_model.hpp>

namespace specnp {

CMat Realization::block() const {
  const int m = state_dim();
  CMat l(2 + m, 2 + m);
  l.topLeftCorner(2, 2) = A;
  l.topRightCorner(2, m) = B;
  l.bottomLeftCorner(m, 2) = C;
  l.bottomRightCorner(m, m) = D;
  return l;
}

Realization Realization::from_block(const CMat& L, bool unitary) {
  if (L.rows() != L.cols() || L.rows() < 2) {
    throw Error(ErrorKind::DimensionMismatch,
                "realization block must be square of size at least 2");
  }
  const Eigen::Index m = L.rows() - 2;
  Realization r;
  r.A = L.topLeftCorner(2, 2);
  r.B = L.topRightCorner(2, m);
  r.C = L.bottomLeftCorner(m, 2);
  r.D = L.bottomRightCorner(m, m);
  r.unitary = unitary;
  return r;
}

Matrix2 eval_psi(const Realization& r, cplx lambda) {
  const int m = r.state_dim();
  if (m == 0) return r.A;
  const CMat k = CMat::Identity(m, m) - lambda * r.D;
  Eigen::JacobiSVD<CMat> svd(k);
  const double smin = svd.singularValues()(m - 1);
  if (!(smin > 1e-13)) {
    throw Error(ErrorKind::NearSingular, "I - lambda D is numerically singular");
  }
  const CMat sol = k.partialPivLu().solve(r.C);
  return r.A + lambda * r.B * sol;
}

GammaPoint eval_h(const Realization& r, cplx lambda) {
  return trdet(eval_psi(r, lambda));
}

CRowVec factor_rank1(const CMat& N, double rel_tol) {
  const Eigen::Index d = N.rows();
  if (d == 0) return CRowVec();
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(N));
  const RVec& ev = es.eigenvalues();
  const double top = ev(d - 1);
  if (!(top > 0.0)) return CRowVec::Zero(d);
  if (d >= 2 && ev(d - 2) > rel_tol * top) {
    std::ostringstream os;
    os << "N has numerical rank above one (eigenvalues " << ev(d - 1) << ", "
       << ev(d - 2) << ")";
    throw Error(ErrorKind::RankExceeded, os.str());
  }
  CRowVec g = std::sqrt(top) * es.eigenvectors().col(d - 1).adjoint();
  Eigen::Index imax = 0;
  g.cwiseAbs().maxCoeff(&imax);
  const double mod = std::abs(g(imax));
  if (mod > 0.0) g *= std::conj(g(imax)) / mod;
  return g;
}

CMat factor_psd(const CMat& M, double rel_tol, double neg_tol) {
  const Eigen::Index d = M.rows();
  if (d == 0) return CMat(0, 0);
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(M));
  const RVec& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev(0) < -neg_tol * (1.0 + scale)) {
    std::ostringstream os;
    os << "M has a negative eigenvalue " << ev(0);
    throw Error(ErrorKind::NegativeEigenvalue, os.str());
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = d - 1; i >= 0; --i) {
    if (ev(i) > rel_tol * scale) keep.push_back(i);
  }
  CMat v(static_cast<Eigen::Index>(keep.size()), d);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const Eigen::Index i = keep[r];
    v.row(static_cast<Eigen::Index>(r)) =
        std::sqrt(ev(i)) * es.eigenvectors().col(i).adjoint();
  }
  return v;
}

SwResult build_contraction(const LmiSystem& lmi, const CRowVec& gamma,
                           const CMat& V, const SwOptions& opt) {
  const int d = lmi.dim();
  if (gamma.size() != d || V.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "gamma and V must have one entry/column per LMI row");
  }
  const Eigen::Index m = V.rows();
  const Eigen::Index dim = 2 + m;
  CMat S(dim, d);
  CMat T(dim, d);
  for (int a = 0; a < d; ++a) {
    const auto [j, k] = LmiSystem::pair_of(a);
    const cplx phi = magic_phi(lmi.grid.z[k], lmi.problem.values[j], kZGridMargin);
    S(0, a) = 1.0;
    S(1, a) = lmi.z_diag(a) * gamma(a);
    T(0, a) = -phi;
    T(1, a) = gamma(a);
    if (m > 0) {
      S.block(2, a, m, 1) = lmi.lambda_diag(a) * V.col(a);
      T.block(2, a, m, 1) = V.col(a);
    }
  }
  const CMat gram = S.adjoint() * S - T.adjoint() * T;
  const double snorm = operator_norm(S);
  SwResult out;
  out.domination_margin = min_eigenvalue(gram);
  if (out.domination_margin < -opt.domination_tol * (1.0 + snorm * snorm)) {
    std::ostringstream os;
    os << "source Gramian does not dominate target Gramian (min eigenvalue "
       << out.domination_margin << ")";
    throw Error(ErrorKind::InvalidWitness, os.str());
  }

  Eigen::JacobiSVD<CMat> svd(S, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv(r) > opt.rank_tol * sv(0)) ++r;
  out.span_rank = r;
  const CMat ur = svd.matrixU().leftCols(r);
  const CMat wr = svd.matrixV().leftCols(r);
  const CMat images = T * wr * sv.head(r).cwiseInverse().asDiagonal();
  CMat L = images * ur.adjoint();
  out.raw_norm = operator_norm(L);

  const bool equality =
      opt.unitary_completion && hermitian_part(gram).norm() <=
                                    opt.equality_tol * (1.0 + snorm * snorm);
  if (equality) {
    // Isometric part by polar decomposition, then a unitary map between the
    // orthogonal complements.
    Eigen::JacobiSVD<CMat> polar(images,
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMat iso = polar.matrixU().leftCols(r) * polar.matrixV().adjoint();
    L = iso * ur.adjoint() + polar.matrixU().rightCols(dim - r) *
                                 svd.matrixU().rightCols(dim - r).adjoint();
  } else if (out.raw_norm > 1.0) {
    L /= out.raw_norm;
  }
  out.realization = Realization::from_block(L, equality);
  return out;
}

SwResult procedure_sw(const LmiSystem& lmi, const WitnessPair& w,
                      const SwOptions& opt, double rank_tol) {
  const CRowVec gamma = w.gamma ? *w.gamma : factor_rank1(w.N, rank_tol);
  const CMat v = factor_psd(w.M);
  return build_contraction(lmi, gamma, v, opt);
}

WitnessPair witness_from_solution(const PsiEvaluator& psi,
                                  const GammaProblem& gp, const ZGrid& grid,
                                  double shape_tol) {
  const int n = static_cast<int>(gp.size());
  const int d = 3 * n;
  std::vector<Matrix2> vals(n);
  for (int j = 0; j < n; ++j) {
    const Matrix2 p = psi(gp.nodes[j]);
    const cplx s = gp.values[j].s;
    const cplx pr = gp.values[j].p;
    const double scale = 1.0 + p.norm();
    if (std::abs(p(0, 0) - 0.5 * s) > shape_tol * scale ||
        std::abs(p(1, 1) - 0.5 * s) > shape_tol * scale ||
        std::abs(p(0, 1) * p(1, 0) - (0.25 * s * s - pr)) >
            shape_tol * scale * scale) {
      std::ostringstream os;
      os << "Psi at node " << j
         << " does not have diagonal s/2 and off-diagonal product s^2/4 - p";
      throw Error(ErrorKind::ShapeViolation, os.str());
    }
    vals[j] = p;
  }
  CRowVec gamma(d);
  std::vector<Eigen::Vector2cd> eta(d);
  for (int a = 0; a < d; ++a) {
    const int j = a / 3;
    const int k = a % 3;
    const cplx den = 1.0 - 0.5 * gp.values[j].s * grid.z[k];
    if (std::abs(den) < 0.5 * kZGridMargin) {
      throw Error(ErrorKind::SingularDenominator,
                  "1 - s_j z_k / 2 vanishes for some grid point");
    }
    gamma(a) = vals[j](1, 0) / den;
    eta[a] = Eigen::Vector2cd(1.0, grid.z[k] * gamma(a));
  }
  WitnessPair w;
  w.gamma = gamma;
  w.N = gamma.adjoint() * gamma;
  w.M.resize(d, d);
  for (int a = 0; a < d; ++a) {
    const int i = a / 3;
    for (int b = 0; b < d; ++b) {
      const int j = b / 3;
      const Matrix2 ker = Matrix2::Identity() - vals[i].adjoint() * vals[j];
      const cplx den = 1.0 - std::conj(gp.nodes[i]) * gp.nodes[j];
      w.M(a, b) = (eta[a].adjoint() * ker * eta[b])(0, 0) / den;
    }
  }
  w.M = hermitian_part(w.M);
  return w;
}

Matrix2 companion_similarity(const Matrix2& w) {
  const std::array<Eigen::RowVector2cd, 4> covectors = {
      Eigen::RowVector2cd(1.0, 0.0), Eigen::RowVector2cd(0.0, 1.0),
      Eigen::RowVector2cd(1.0, 1.0), Eigen::RowVector2cd(1.0, cplx(0.0, 1.0))};
  const double scale = 1.0 + w.norm();
  for (const auto& y : covectors) {
    Matrix2 p;
    p.row(0) = y;
    p.row(1) = y * w;
    if (std::abs(p.determinant()) > 1e-8 * scale * scale) return p;
  }
  throw Error(ErrorKind::ScalarTarget,
              "target has no cyclic vector; it is a scalar multiple of I");
}

namespace {

using MatPoly = std::array<Polynomial, 4>;

MatPoly lagrange(const std::vector<cplx>& nodes,
                 const std::vector<Matrix2>& values) {
  MatPoly p;
  const std::size_t n = nodes.size();
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial l = Polynomial::constant(1.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      l = l * Polynomial({-nodes[i] / (nodes[j] - nodes[i]),
                          1.0 / (nodes[j] - nodes[i])});
    }
    for (int e = 0; e < 4; ++e) p[e] = p[e] + l * values[j](e / 2, e % 2);
  }
  return p;
}

Polynomial det_poly(const MatPoly& p) { return p[0] * p[3] - p[1] * p[2]; }

bool nonsingular_on_disc(const MatPoly& p) {
  const Polynomial det = det_poly(p).trimmed(1e-14);
  if (det.is_zero()) return false;
  for (cplx r : det.roots()) {
    if (std::abs(r) <= 1.0 + 1e-6) return false;
  }
  // 720-point grid: 20 radii times 36 angles.
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int ir = 1; ir <= 20; ++ir) {
    const double rad = ir / 20.0;
    for (int ia = 0; ia < 36; ++ia) {
      const double v = std::abs(det(std::polar(rad, 2.0 * M_PI * ia / 36.0)));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return lo >= 1e-6 * std::max(1.0, hi);
}

std::vector<Matrix2> to_coeffs(const MatPoly& p) {
  int deg = 0;
  for (const auto& e : p) deg = std::max(deg, e.degree());
  std::vector<Matrix2> c(deg + 1, Matrix2::Zero());
  for (int e = 0; e < 4; ++e) {
    for (int k = 0; k <= p[e].degree(); ++k) c[k](e / 2, e % 2) = p[e].coeff(k);
  }
  return c;
}

Matrix2 eval_coeffs(const std::vector<Matrix2>& c, cplx lambda) {
  Matrix2 acc = Matrix2::Zero();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

}  // namespace

CompanionLift::CompanionLift(HEvaluator h, const SpectralProblem& problem,
                             std::optional<Anchor> anchor,
                             unsigned long long seed)
    : h_(std::move(h)) {
  std::vector<cplx> nodes = problem.nodes;
  std::vector<Matrix2> base;
  for (const Matrix2& w : problem.targets) {
    if (is_scalar_target(w)) {
      throw Error(ErrorKind::ScalarTarget, "scalar target cannot be lifted");
    }
    base.push_back(companion_similarity(w));
  }
  if (anchor) {
    nodes.push_back(anchor->node);
    base.push_back(anchor->value);
  }
  const Polynomial vanish = [&] {
    Polynomial q = Polynomial::constant(1.0);
    for (cplx x : nodes) q = q * Polynomial::linear_root(x);
    return q;
  }();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&] {
    Matrix2 r;
    for (int e = 0; e < 4; ++e) r(e / 2, e % 2) = cplx(gauss(rng), gauss(rng));
    return r;
  };

  constexpr int kAttempts = 40;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Matrix2> vals = base;
    if (attempt >= 2) {
      // Other admissible similarities at the targets: [y; y W] for random y.
      for (std::size_t j = 0; j < problem.targets.size(); ++j) {
        Eigen::RowVector2cd y(cplx(gauss(rng), gauss(rng)),
                              cplx(gauss(rng), gauss(rng)));
        Matrix2 p;
        p.row(0) = y;
        p.row(1) = y * problem.targets[j];
        if (std::abs(p.determinant()) > 1e-6 * (1.0 + p.squaredNorm())) {
          vals[j] = p;
        }
      }
    }
    MatPoly p = lagrange(nodes, vals);
    if (attempt % 2 == 1) {
      const double eps = 0.1 * (1 + attempt / 2);
      const Matrix2 r = random_matrix();
      for (int e = 0; e < 4; ++e) {
        p[e] = p[e] + vanish * (eps * r(e / 2, e % 2));
      }
    }
    if (nonsingular_on_disc(p)) {
      coeffs_ = to_coeffs(p);
      polynomial_ = true;
      return;
    }
  }

  // P = exp(L) with L interpolating logarithms is invertible everywhere.
  std::vector<Matrix2> logs;
  for (const Matrix2& v : base) logs.push_back(CMat(CMat(v).log()));
  const MatPoly lp = lagrange(nodes, logs);
  log_coeffs_ = to_coeffs(lp);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const CMat back = CMat(eval_coeffs(log_coeffs_, nodes[j])).exp();
    if ((back - base[j]).norm() > 1e-8 * (1.0 + base[j].norm())) {
      throw Error(ErrorKind::SingularLift,
                  "could not build a similarity invertible on the closed disc");
    }
  }
  polynomial_ = false;
}

Matrix2 CompanionLift::similarity(cplx lambda) const {
  if (polynomial_) return eval_coeffs(coeffs_, lambda);
  return CMat(CMat(eval_coeffs(log_coeffs_, lambda)).exp());
}

Matrix2 CompanionLift::operator()(cplx lambda) const {
  const GammaPoint v = h_(lambda);
  Matrix2 comp;
  comp << 0.0, 1.0, -v.p, v.s;
  const Matrix2 p = similarity(lambda);
  return p.partialPivLu().solve(comp * p);
}

bool check_gamma_inner(const Realization& r, int n_samples) {
  for (int i = 0; i < n_samples; ++i) {
    const cplx lambda = std::polar(1.0 - 1e-8, 2.0 * M_PI * i / n_samples);
    try {
      if (!in_bgamma(eval_h(r, lambda), 1e-5)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

double gamma_excess(const GammaPoint& pt) {
  return std::abs(symmetric_roots(pt).first) - 1.0;
}

InterpolantCheck verify_interpolant(const HEvaluator& h, const GammaProblem& gp,
                                    double node_tol, double gamma_slack) {
  InterpolantCheck chk;
  chk.worst_gamma_excess = -std::numeric_limits<double>::infinity();
  try {
    for (std::size_t j = 0; j < gp.size(); ++j) {
      const GammaPoint v = h(gp.nodes[j]);
      chk.max_node_error = std::max({chk.max_node_error,
                                     std::abs(v.s - gp.values[j].s),
                                     std::abs(v.p - gp.values[j].p)});
    }
    const std::array<double, 4> radii = {0.3, 0.6, 0.85, 0.99};
    for (double rad : radii) {
      for (int ia = 0; ia < 16; ++ia) {
        const GammaPoint v = h(std::polar(rad, 2.0 * M_PI * (ia + 0.5) / 16.0));
        chk.worst_gamma_excess = std::max(chk.worst_gamma_excess, gamma_excess(v));
      }
    }
  } catch (const Error&) {
    return chk;
  }
  chk.nodes_ok = chk.max_node_error <= node_tol;
  chk.gamma_ok = chk.worst_gamma_excess <= gamma_slack;
  return chk;
}

}  // namespace specnp
