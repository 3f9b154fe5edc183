#include <specnp/rational.hpp>

#include <algorithm>
#include <cmath>

namespace specnp {
namespace {

constexpr double kRootMatch = 1e-9;

}  // namespace

ScalarRational::ScalarRational(cplx c)
    : num_(Polynomial::constant(c)), den_(Polynomial::constant(1.0)) {}

ScalarRational::ScalarRational(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw Error(ErrorKind::Pole, "rational function with zero denominator");
  }
  reduce();
}

ScalarRational ScalarRational::blaschke(cplx gamma) {
  if (!(gamma.real() > 0.0)) {
    throw Error(ErrorKind::Precondition,
                "Blaschke factor needs a point of the open right half-plane");
  }
  return ScalarRational(Polynomial::linear_root(gamma),
                        Polynomial::linear_root(-std::conj(gamma)));
}

void ScalarRational::reduce() {
  num_ = num_.trimmed(1e-15);
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1.0);
    return;
  }
  std::vector<cplx> nr = num_.roots();
  std::vector<cplx> dr = den_.roots();
  bool cancelled = false;
  for (auto it = nr.begin(); it != nr.end();) {
    auto match = std::find_if(dr.begin(), dr.end(), [&](cplx r) {
      return std::abs(r - *it) <= kRootMatch * (1.0 + std::abs(r));
    });
    if (match != dr.end()) {
      dr.erase(match);
      it = nr.erase(it);
      cancelled = true;
    } else {
      ++it;
    }
  }
  // Monic denominator.
  const cplx lead = num_.leading() / den_.leading();
  if (cancelled) {
    num_ = Polynomial::from_roots(nr, lead);
    den_ = Polynomial::from_roots(dr, 1.0);
  } else {
    num_ = num_ * (1.0 / den_.leading());
    den_ = den_ * (1.0 / den_.leading());
  }
}

bool ScalarRational::is_rh_inf() const {
  if (!is_proper()) return false;
  for (cplx r : den_.roots()) {
    if (r.real() >= -1e-9) return false;
  }
  return true;
}

cplx ScalarRational::operator()(cplx s) const {
  const cplx d = den_(s);
  const cplx n = num_(s);
  if (std::abs(d) <= 1e-300 ||
      std::abs(d) <= 1e-14 * std::abs(n) * (1.0 + std::pow(std::abs(s), den_.degree()))) {
    throw Error(ErrorKind::Pole, "evaluation at a pole");
  }
  return n / d;
}

cplx ScalarRational::at_infinity() const {
  if (num_.is_zero() || num_.degree() < den_.degree()) return 0.0;
  if (num_.degree() == den_.degree()) return num_.leading() / den_.leading();
  throw Error(ErrorKind::Pole, "improper rational function has a pole at infinity");
}

ScalarRational ScalarRational::operator+(const ScalarRational& o) const {
  return ScalarRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ScalarRational ScalarRational::operator-(const ScalarRational& o) const {
  return ScalarRational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

ScalarRational ScalarRational::operator*(const ScalarRational& o) const {
  return ScalarRational(num_ * o.num_, den_ * o.den_);
}

ScalarRational ScalarRational::operator/(const ScalarRational& o) const {
  if (o.is_zero()) throw Error(ErrorKind::Pole, "division by zero rational");
  return ScalarRational(num_ * o.den_, den_ * o.num_);
}

ScalarRational ScalarRational::operator-() const {
  return ScalarRational(-num_, den_);
}

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows * cols)) {}

RationalMatrix::RationalMatrix(
    std::initializer_list<std::initializer_list<ScalarRational>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) {
      throw Error(ErrorKind::DimensionMismatch, "ragged rational matrix");
    }
    e_.insert(e_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = ScalarRational(1.0);
  return m;
}

RationalMatrix RationalMatrix::diag(const std::vector<ScalarRational>& d) {
  const int n = static_cast<int>(d.size());
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

RationalMatrix RationalMatrix::blocks(
    const std::vector<std::vector<RationalMatrix>>& b) {
  int rows = 0;
  int cols = 0;
  for (const auto& br : b) rows += br.front().rows();
  for (const auto& blk : b.front()) cols += blk.cols();
  RationalMatrix m(rows, cols);
  int r0 = 0;
  for (const auto& br : b) {
    int c0 = 0;
    for (const auto& blk : br) {
      if (blk.rows() != br.front().rows()) {
        throw Error(ErrorKind::DimensionMismatch, "block heights differ");
      }
      for (int i = 0; i < blk.rows(); ++i) {
        for (int j = 0; j < blk.cols(); ++j) m(r0 + i, c0 + j) = blk(i, j);
      }
      c0 += blk.cols();
    }
    if (c0 != cols) throw Error(ErrorKind::DimensionMismatch, "block widths differ");
    r0 += br.front().rows();
  }
  return m;
}

RationalMatrix RationalMatrix::block(int i, int j, int r, int c) const {
  RationalMatrix m(r, c);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < c; ++b) m(a, b) = (*this)(i + a, j + b);
  }
  return m;
}

CMat RationalMatrix::evaluate(cplx s) const {
  CMat m(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j)(s);
  }
  return m;
}

CMat RationalMatrix::at_infinity() const {
  CMat m(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).at_infinity();
  }
  return m;
}

bool RationalMatrix::is_rh_inf() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const ScalarRational& x) { return x.is_rh_inf(); });
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw Error(ErrorKind::DimensionMismatch, "rational matrix sum shape");
  }
  RationalMatrix m(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
  return m;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  return *this + (-o);
}

RationalMatrix RationalMatrix::operator-() const {
  RationalMatrix m(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) {
    throw Error(ErrorKind::DimensionMismatch, "rational matrix product shape");
  }
  RationalMatrix m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < o.cols_; ++j) {
      ScalarRational acc;
      for (int k = 0; k < cols_; ++k) {
        const ScalarRational& x = (*this)(i, k);
        const ScalarRational& y = o(k, j);
        if (x.is_zero() || y.is_zero()) continue;
        acc = acc + x * y;
      }
      m(i, j) = acc;
    }
  }
  return m;
}

RationalMatrix RationalMatrix::operator*(const ScalarRational& a) const {
  RationalMatrix m(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] * a;
  return m;
}

}  // namespace specnp
