#include <specnp/robust_stab.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <specnp/gamma_core.hpp>

namespace specnp::robust {
namespace {

const double kSqrt3 = std::sqrt(3.0);

double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

RationalMatrix m2(const ScalarRational& a, const ScalarRational& b,
                  const ScalarRational& c, const ScalarRational& d) {
  return RationalMatrix{{a, b}, {c, d}};
}

RationalMatrix zeros2() { return RationalMatrix(2, 2); }

/// Smallest singular value relative to the largest.
bool near_singular(const Matrix2& m) {
  Eigen::JacobiSVD<Matrix2> svd(m);
  const auto& sv = svd.singularValues();
  return !(sv(1) > 1e-12 * std::max(1.0, sv(0)));
}

}  // namespace

ScalarRational blaschke(cplx gamma) { return ScalarRational::blaschke(gamma); }

FgPair fg_pair() {
  FgPair fg;
  fg.f = ScalarRational(Polynomial({4.0, 4.0 / 3.0}), Polynomial({1.0, 1.0}));
  fg.g = ScalarRational(Polynomial({-15.0, -8.0, -1.0}),
                        Polynomial({3.0, 6.0, 3.0}));
  return fg;
}

std::vector<cplx> sample_points() {
  std::vector<cplx> s;
  for (int k = 1; k <= 20; ++k) s.emplace_back(0.5 + 0.3 * k, 0.7 * k);
  return s;
}

double bezout2_residual(const CoprimeData& cd, cplx s) {
  CMat left(4, 4);
  CMat right(4, 4);
  left << cd.X_tilde.evaluate(s), -cd.Y_tilde.evaluate(s),
      -cd.N_tilde.evaluate(s), cd.M_tilde.evaluate(s);
  right << cd.M_hat.evaluate(s), cd.Y_hat.evaluate(s), cd.N_hat.evaluate(s),
      cd.X_hat.evaluate(s);
  return max_abs(left * right - CMat::Identity(4, 4));
}

double doubly_residual(const CoprimeData& cd, cplx s) {
  const CMat right = cd.N_hat.evaluate(s) * cd.M_hat.evaluate(s).inverse();
  const CMat left = cd.M_tilde.evaluate(s).inverse() * cd.N_tilde.evaluate(s);
  return max_abs(right - left);
}

CoprimeData doubly_coprime() {
  const ScalarRational b1 = blaschke(1.0);
  const ScalarRational b3 = blaschke(3.0);
  const auto [f, g] = fg_pair();
  const ScalarRational zero;
  CoprimeData cd;
  cd.N_hat = m2(zero, b1, b3, zero);
  cd.N_tilde = cd.N_hat;
  cd.M_hat = RationalMatrix::diag({b1, b3});
  cd.M_tilde = RationalMatrix::diag({b3, b1});
  cd.X_tilde = m2(f, -b1, -b3, g);
  cd.Y_tilde = -m2(b3, g, f, b1);
  cd.X_hat = m2(g, -b1, -b3, f);
  cd.Y_hat = -m2(b1, g, f, b3);
  for (cplx s : sample_points()) {
    if (bezout2_residual(cd, s) > 1e-8 || doubly_residual(cd, s) > 1e-8) {
      throw Error(ErrorKind::IdentityViolation,
                  "coprime factorization identities fail at a sample point");
    }
  }
  return cd;
}

TFunctions build_T(cplx a, cplx c) {
  if (c == 0.0) throw Error(ErrorKind::Precondition, "c must be nonzero");
  const ScalarRational b1 = blaschke(1.0);
  const ScalarRational b3 = blaschke(3.0);
  const ScalarRational br3 = blaschke(kSqrt3);
  TFunctions t;
  t.T1 = m2(ScalarRational(), b1, ScalarRational(a) * b3, ScalarRational(c) * br3);
  t.T2 = b1;
  t.T3 = b3;
  return t;
}

SpectralProblem to_disc_problem(cplx a, cplx c) {
  const TFunctions t = build_T(a, c);
  SpectralProblem sp;
  sp.nodes = {cayley_inv(1.0), cayley_inv(3.0)};
  sp.targets = {Matrix2(t.T1.evaluate(1.0)), Matrix2(t.T1.evaluate(3.0))};
  return sp;
}

double robust_threshold() { return 1.0 / (4.0 - 2.0 * kSqrt3); }

bool robust_criterion(cplx c) { return std::abs(c) < robust_threshold(); }

Matrix2 nonsingularity_offset(cplx a, cplx c) {
  Matrix2 z;
  z << -1.0, 1.0 / 3.0, -1.0 / 3.0 - a, -1.0 - c;
  return z;
}

QFunction::QFunction(DiscMatrixFn F, cplx a, cplx c)
    : F_(std::move(F)), a_(a), c_(c) {
  T1_ = build_T(a, c).T1;
  b1b3_ = blaschke(1.0) * blaschke(3.0);
  f1_ = F_(1.0 - 1e-7);
  q_inf_ = Matrix2(T1_.at_infinity()) - f1_;
}

Matrix2 QFunction::direct(cplx s) const {
  const Matrix2 num = Matrix2(T1_.evaluate(s)) - F_(cayley_inv(s));
  return num / b1b3_(s);
}

Matrix2 QFunction::operator()(cplx s) const {
  constexpr double kOffset = 1e-5;
  for (double r : {1.0, 3.0}) {
    const cplx d = s - r;
    if (std::abs(d) >= kOffset) continue;
    const cplx u = std::abs(d) > 0.0 ? d / std::abs(d) : cplx(1.0);
    const Matrix2 plus = direct(r + kOffset * u);
    const Matrix2 minus = direct(r - kOffset * u);
    if (max_abs(plus - minus) > 1e-4 * (1.0 + max_abs(plus) + max_abs(minus))) {
      throw Error(ErrorKind::Pole, "Q has a pole at a zero of b1 b3");
    }
    const Matrix2 mid = 0.5 * (plus + minus);
    const Matrix2 slope = (plus - minus) / (2.0 * kOffset * u);
    return mid + d * slope;
  }
  return direct(s);
}

QFunction build_Q(DiscMatrixFn F, cplx a, cplx c) {
  const SpectralProblem sp = to_disc_problem(a, c);
  for (std::size_t j = 0; j < sp.nodes.size(); ++j) {
    if (max_abs(F(sp.nodes[j]) - sp.targets[j]) > 1e-6) {
      throw Error(ErrorKind::Precondition,
                  "F does not match T1 at the Cayley preimages of 1 and 3");
    }
  }
  QFunction q(std::move(F), a, c);
  if (near_singular(q.F_at_one() + nonsingularity_offset(a, c))) {
    throw Error(ErrorKind::Precondition, "F(1) + Z is singular");
  }
  return q;
}

Controller::Controller(CoprimeData cd, HalfPlaneMatrixFn Q, Matrix2 q_inf)
    : cd_(std::move(cd)), Q_(std::move(Q)), q_inf_(std::move(q_inf)) {}

namespace {

Matrix2 youla(const Matrix2& Yh, const Matrix2& Mh, const Matrix2& Xh,
              const Matrix2& Nh, const Matrix2& q) {
  const Matrix2 den = Xh - Nh * q;
  if (near_singular(den)) {
    throw Error(ErrorKind::NearSingular, "X^ - N^ Q is singular");
  }
  return (Yh - Mh * q) * den.inverse();
}

}  // namespace

Matrix2 Controller::operator()(cplx s) const {
  return youla(cd_.Y_hat.evaluate(s), cd_.M_hat.evaluate(s),
               cd_.X_hat.evaluate(s), cd_.N_hat.evaluate(s), Q_(s));
}

Matrix2 Controller::dual(cplx s) const {
  const Matrix2 q = Q_(s);
  const Matrix2 left = Matrix2(cd_.X_tilde.evaluate(s)) - q * cd_.N_tilde.evaluate(s);
  if (near_singular(left)) {
    throw Error(ErrorKind::NearSingular, "X~ - Q N~ is singular");
  }
  return left.inverse() * (Matrix2(cd_.Y_tilde.evaluate(s)) - q * cd_.M_tilde.evaluate(s));
}

Matrix2 Controller::at_infinity() const {
  return youla(cd_.Y_hat.at_infinity(), cd_.M_hat.at_infinity(),
               cd_.X_hat.at_infinity(), cd_.N_hat.at_infinity(), q_inf_);
}

double Controller::formula_gap() const {
  double gap = 0.0;
  for (cplx s : sample_points()) gap = std::max(gap, max_abs((*this)(s) - dual(s)));
  return gap;
}

Controller build_controller(const CoprimeData& cd, HalfPlaneMatrixFn Q,
                            const Matrix2& q_inf) {
  Controller k(cd, std::move(Q), q_inf);
  k.at_infinity();
  if (k.formula_gap() > 1e-8) {
    throw Error(ErrorKind::NearSingular, "the two controller formulas disagree");
  }
  return k;
}

RobustReport verify_robust(const HalfPlaneMatrixFn& Q, const Matrix2& q_inf,
                           cplx a, cplx c, int grid_size) {
  const RationalMatrix T1 = build_T(a, c).T1;
  const ScalarRational b1b3 = blaschke(1.0) * blaschke(3.0);
  RobustReport rep;
  auto visit = [&](cplx s) {
    const Matrix2 m = Matrix2(T1.evaluate(s)) - b1b3(s) * Q(s);
    const double r = spectral_radius_2x2(m);
    if (!(r <= rep.sup_radius)) {
      rep.sup_radius = r;
      rep.worst_s = s;
    }
  };
  visit(0.0);
  const int n = std::max(grid_size, 2);
  for (int k = 0; k < n; ++k) {
    const double w = std::pow(10.0, -3.0 + 6.0 * k / (n - 1));
    visit(cplx(0.0, w));
    visit(cplx(0.0, -w));
  }
  const double r_inf = spectral_radius_2x2(Matrix2(T1.at_infinity()) - q_inf);
  if (!(r_inf <= rep.sup_radius)) {
    rep.sup_radius = r_inf;
    rep.worst_at_infinity = true;
  }
  rep.pass = rep.sup_radius < 1.0 - 1e-6;
  return rep;
}

RobustReport verify_robust(const QFunction& Q, int grid_size) {
  return verify_robust([&Q](cplx s) { return Q(s); }, Q.at_infinity(), Q.a(),
                       Q.c(), grid_size);
}

RationalMatrix assemble_plant(cplx a, cplx c, const PlantBlocks& R) {
  for (const RationalMatrix* r : {&R.R12, &R.R21, &R.R22, &R.R23, &R.R32}) {
    if (r->rows() != 2 || r->cols() != 2) {
      throw Error(ErrorKind::DimensionMismatch, "free plant blocks must be 2x2");
    }
    if (!r->is_rh_inf()) {
      throw Error(ErrorKind::Precondition, "free plant blocks must lie in RH-inf");
    }
  }
  if (c == 0.0) throw Error(ErrorKind::Precondition, "c must be nonzero");
  const ScalarRational b1 = blaschke(1.0);
  const ScalarRational b3 = blaschke(3.0);
  const ScalarRational br3 = blaschke(kSqrt3);
  const auto [f, g] = fg_pair();
  const ScalarRational zero;
  const ScalarRational one(1.0);

  const RationalMatrix G11 = m2(b1 * b3, b1 + g * b3, ScalarRational(a) * b3 + f * b1,
                                ScalarRational(c) * br3 + b1 * b3);
  const RationalMatrix G13 = RationalMatrix::diag({one, b1 / b3});
  const RationalMatrix G31 = RationalMatrix::diag({one, b3 / b1});
  const RationalMatrix G33 = m2(zero, b1 / b3, b3 / b1, zero);
  const RationalMatrix G12 = R.R12 + m2(zero, g, f * b1 / b3, zero) * R.R32;
  const RationalMatrix G21 = R.R21 + R.R23 * m2(zero, g * b3 / b1, zero, zero);
  const RationalMatrix G22 = R.R22 + R.R23 * m2(zero, g / b1, f / b3, zero) * R.R32;
  const RationalMatrix G23 = R.R23 * RationalMatrix::diag({one / b1, one / b3});
  const RationalMatrix G32 = RationalMatrix::diag({one / b3, one / b1}) * R.R32;
  return RationalMatrix::blocks(
      {{G11, G12, G13}, {G21, G22, G23}, {G31, G32, G33}});
}

StabilizabilityReport check_plant_stabilizable(const RationalMatrix& G,
                                               const CoprimeData& cd,
                                               const RationalMatrix& R32) {
  if (G.rows() != 6 || G.cols() != 6) {
    throw Error(ErrorKind::DimensionMismatch, "plant must be 6x6");
  }
  const ScalarRational b3 = blaschke(3.0);
  const auto [f, g] = fg_pair();
  const ScalarRational zero;
  const RationalMatrix I2 = RationalMatrix::identity(2);
  const RationalMatrix Z2 = zeros2();

  const RationalMatrix E1 = m2(zero, -(g * b3), zero, zero);
  const RationalMatrix E2 = -(m2(zero, g, f, zero) * R32);
  const RationalMatrix m_hat = RationalMatrix::blocks(
      {{I2, Z2, Z2}, {Z2, I2, Z2}, {E1, E2, cd.M_hat}});
  const RationalMatrix expected = RationalMatrix::blocks(
      {{I2, Z2, Z2, Z2},
       {Z2, I2, Z2, Z2},
       {-m2(b3, zero, f, b3), -R32, cd.X_tilde, -cd.Y_tilde},
       {-(I2 * b3), -R32, -cd.N_tilde, cd.M_tilde}});

  StabilizabilityReport rep;
  rep.rhs_stable = expected.is_rh_inf();
  for (cplx s : sample_points()) {
    const CMat g6 = G.evaluate(s);
    CMat big = CMat::Identity(8, 8);
    big.block(4, 6, 2, 2) = cd.Y_hat.evaluate(s);
    big.block(6, 0, 2, 6) = g6.block(4, 0, 2, 6);
    big.block(6, 6, 2, 2) = cd.X_hat.evaluate(s);
    CMat left = CMat::Identity(8, 8);
    left.topLeftCorner(6, 6) = m_hat.evaluate(s).inverse();
    const CMat product = left * big.partialPivLu().inverse();
    const double err = max_abs(product - expected.evaluate(s));
    rep.max_identity_error =
        std::isfinite(err) ? std::max(rep.max_identity_error, err)
                           : std::numeric_limits<double>::infinity();
  }
  rep.ok = rep.rhs_stable && rep.max_identity_error <= 1e-8;
  return rep;
}

bool verify_plant_stabilizable(const RationalMatrix& G, const CoprimeData& cd,
                               const RationalMatrix& R32) {
  return check_plant_stabilizable(G, cd, R32).ok;
}

}  // namespace specnp::robust
