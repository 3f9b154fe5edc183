#ifndef SPECNP_BARRIER_SDP_HPP
#define SPECNP_BARRIER_SDP_HPP

///
/// \file barrier_sdp.hpp
///
/// A small dense log-det barrier method for problems of the form
///
///   maximize  c^T x   subject to  B_i(x) = C_i + sum_p x_p A_ip  >= 0,
///
/// where every A_ip is a sparse Hermitian matrix. The LMIs arising here are
/// Hadamard-weighted copies of Hermitian matrix variables, so each A_ip has at
/// most two nonzeros and the Hessian assembles in O(#vars^2) per block.
///

#include <limits>
#include <map>
#include <vector>

#include <specnp/types.hpp>

namespace specnp::sdp {

struct SparseEntry {
  int row;
  int col;
  cplx coeff;
};

/// B(x) = constant + sum_p x_p A_p.
class AffineLmi {
 public:
  explicit AffineLmi(CMat constant) : constant_(std::move(constant)) {}

  void add_entry(int var, int row, int col, cplx coeff);

  int dim() const { return static_cast<int>(constant_.rows()); }
  const CMat& constant() const { return constant_; }
  CMat& constant() { return constant_; }

  struct Term {
    int var;
    std::vector<SparseEntry> entries;
  };
  const std::vector<Term>& terms() const { return terms_; }

  CMat evaluate(const RVec& x) const;

 private:
  CMat constant_;
  std::vector<Term> terms_;
  std::map<int, std::size_t> slot_;
};

/// A Hermitian m x m matrix variable stored as m^2 real coordinates starting
/// at `offset`: the m diagonal entries, then (Re, Im) of each strictly upper
/// entry in row-major order.
class HermitianVariable {
 public:
  HermitianVariable(int offset, int m) : offset_(offset), m_(m) {}

  int offset() const { return offset_; }
  int dim() const { return m_; }
  int size() const { return m_ * m_; }
  int diag_index(int a) const { return offset_ + a; }

  /// Adds sign * (K o V) to the lmi (Hadamard product with Hermitian K).
  void add_hadamard(AffineLmi& lmi, const CMat& kernel, double sign) const;
  /// Adds sign * V.
  void add_plain(AffineLmi& lmi, double sign) const;

  CMat value(const RVec& x) const;
  void assign(RVec& x, const CMat& v) const;

 private:
  int upper_index(int a, int b) const;

  int offset_;
  int m_;
};

struct Options {
  double gap_tol = 1e-9;
  double growth = 10.0;
  int max_newton = 2000;
  /// Stop as soon as a strictly feasible point with c^T x >= target is found.
  double target = std::numeric_limits<double>::infinity();
};

struct Result {
  RVec x;
  double objective = -std::numeric_limits<double>::infinity();
  /// Objective plus the duality-gap bound (degree / weight) at the last
  /// centered point.
  double upper_bound = std::numeric_limits<double>::infinity();
  bool converged = false;
  bool reached_target = false;
  int newton_steps = 0;
  /// Approximate dual matrices B_i(x)^{-1} / weight.
  std::vector<CMat> duals;
};

/// x0 must be strictly feasible. Throws Error(Precondition) otherwise.
Result maximize(const RVec& c, const std::vector<AffineLmi>& lmis, RVec x0,
                const Options& options = {});

}  // namespace specnp::sdp

#endif  // SPECNP_BARRIER_SDP_HPP
