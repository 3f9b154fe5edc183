#include <specnp/polynomial.hpp>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace specnp {

Polynomial::Polynomial(std::initializer_list<cplx> coeffs) : c_(coeffs) {
  normalize();
}

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  normalize();
}

Polynomial Polynomial::constant(cplx c) { return Polynomial({c}); }

Polynomial Polynomial::linear_root(cplx r) { return Polynomial({-r, 1.0}); }

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots, cplx lead) {
  Polynomial p = constant(lead);
  for (cplx r : roots) p = p * linear_root(r);
  return p;
}

void Polynomial::normalize() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

cplx Polynomial::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx(0.0);
}

cplx Polynomial::operator()(cplx s) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<cplx> out(std::max(c_.size(), o.c_.size()), cplx(0.0));
  for (std::size_t k = 0; k < c_.size(); ++k) out[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) out[k] += o.c_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::operator-() const { return *this * cplx(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<cplx> out(c_.size() + o.c_.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(cplx a) const {
  std::vector<cplx> out = c_;
  for (cplx& x : out) x *= a;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> out(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) {
    out[k - 1] = static_cast<double>(k) * c_[k];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  double top = 0.0;
  for (cplx x : c_) top = std::max(top, std::abs(x));
  std::vector<cplx> out = c_;
  while (!out.empty() && std::abs(out.back()) <= rel_tol * top) out.pop_back();
  return Polynomial(std::move(out));
}

std::vector<cplx> Polynomial::roots() const {
  const int deg = degree();
  if (deg < 1) return {};
  if (deg == 1) return {-c_[0] / c_[1]};
  CMat comp = CMat::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c_[i] / c_[deg];
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  std::vector<cplx> out(deg);
  for (int i = 0; i < deg; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

Polynomial Polynomial::deflate(cplx r) const {
  const int deg = degree();
  if (deg < 1) return {};
  std::vector<cplx> q(deg);
  cplx carry = c_[deg];
  for (int k = deg - 1; k >= 0; --k) {
    q[k] = carry;
    carry = c_[k] + carry * r;
  }
  return Polynomial(std::move(q));
}

bool Polynomial::is_real(double tol) const {
  double top = 0.0;
  for (cplx x : c_) top = std::max(top, std::abs(x));
  for (cplx x : c_) {
    if (std::abs(x.imag()) > tol * top) return false;
  }
  return true;
}

}  // namespace specnp
