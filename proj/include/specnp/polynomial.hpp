#ifndef SPECNP_POLYNOMIAL_HPP
#define SPECNP_POLYNOMIAL_HPP

#include <initializer_list>
#include <vector>

#include <specnp/types.hpp>

namespace specnp {

/// Dense univariate polynomial with complex coefficients stored in increasing
/// degree. The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<cplx> coeffs);
  explicit Polynomial(std::vector<cplx> coeffs);
  static Polynomial constant(cplx c);
  /// (s - r).
  static Polynomial linear_root(cplx r);
  /// lead * prod (s - r_i).
  static Polynomial from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const;
  cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

  cplx operator()(cplx s) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cplx a) const;
  Polynomial operator-() const;

  Polynomial derivative() const;

  /// Drops trailing coefficients with modulus <= rel_tol * max modulus.
  Polynomial trimmed(double rel_tol) const;

  /// Roots from the eigenvalues of the companion matrix. Empty for constants.
  std::vector<cplx> roots() const;

  /// Divides by (s - r) with synthetic division, discarding the remainder.
  Polynomial deflate(cplx r) const;

  /// True when every coefficient has imaginary part below tol times the
  /// largest coefficient modulus.
  bool is_real(double tol = 1e-12) const;

 private:
  void normalize();
  std::vector<cplx> c_;
};

inline Polynomial operator*(cplx a, const Polynomial& p) { return p * a; }

}  // namespace specnp

#endif  // SPECNP_POLYNOMIAL_HPP
