#include <specnp/barrier_sdp.hpp>

#include <cmath>

namespace specnp::sdp {

void AffineLmi::add_entry(int var, int row, int col, cplx coeff) {
  auto it = slot_.find(var);
  if (it == slot_.end()) {
    it = slot_.emplace(var, terms_.size()).first;
    terms_.push_back(Term{var, {}});
  }
  terms_[it->second].entries.push_back(SparseEntry{row, col, coeff});
}

CMat AffineLmi::evaluate(const RVec& x) const {
  CMat b = constant_;
  for (const Term& t : terms_) {
    const double v = x(t.var);
    if (v == 0.0) continue;
    for (const SparseEntry& e : t.entries) b(e.row, e.col) += v * e.coeff;
  }
  return b;
}

int HermitianVariable::upper_index(int a, int b) const {
  const int count = a * m_ - a * (a + 1) / 2 + (b - a - 1);
  return offset_ + m_ + 2 * count;
}

void HermitianVariable::add_hadamard(AffineLmi& lmi, const CMat& kernel,
                                     double sign) const {
  const cplx i(0.0, 1.0);
  for (int a = 0; a < m_; ++a) {
    lmi.add_entry(diag_index(a), a, a, sign * kernel(a, a).real());
    for (int b = a + 1; b < m_; ++b) {
      const int re = upper_index(a, b);
      lmi.add_entry(re, a, b, sign * kernel(a, b));
      lmi.add_entry(re, b, a, sign * kernel(b, a));
      lmi.add_entry(re + 1, a, b, sign * i * kernel(a, b));
      lmi.add_entry(re + 1, b, a, -sign * i * kernel(b, a));
    }
  }
}

void HermitianVariable::add_plain(AffineLmi& lmi, double sign) const {
  add_hadamard(lmi, CMat::Ones(m_, m_), sign);
}

CMat HermitianVariable::value(const RVec& x) const {
  CMat v(m_, m_);
  for (int a = 0; a < m_; ++a) {
    v(a, a) = x(diag_index(a));
    for (int b = a + 1; b < m_; ++b) {
      const int re = upper_index(a, b);
      v(a, b) = cplx(x(re), x(re + 1));
      v(b, a) = std::conj(v(a, b));
    }
  }
  return v;
}

void HermitianVariable::assign(RVec& x, const CMat& v) const {
  for (int a = 0; a < m_; ++a) {
    x(diag_index(a)) = v(a, a).real();
    for (int b = a + 1; b < m_; ++b) {
      const int re = upper_index(a, b);
      const cplx u = 0.5 * (v(a, b) + std::conj(v(b, a)));
      x(re) = u.real();
      x(re + 1) = u.imag();
    }
  }
}

namespace {

struct BlockState {
  CMat w;           // inverse
  double logdet = 0.0;
};

/// Cholesky-based feasibility test; fills the inverse and log-determinant.
bool factor(const CMat& b, BlockState* state) {
  if (!b.allFinite()) return false;
  Eigen::LLT<CMat> llt(b);
  if (llt.info() != Eigen::Success) return false;
  const auto& l = llt.matrixLLT();
  double ld = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i).real();
    if (!(d > 0.0)) return false;
    ld += 2.0 * std::log(d);
  }
  if (state != nullptr) {
    state->logdet = ld;
    state->w = llt.solve(CMat::Identity(b.rows(), b.cols()));
  }
  return true;
}

bool barrier_value(const RVec& c, const std::vector<AffineLmi>& lmis,
                   const RVec& x, double weight, double* value) {
  double phi = -weight * c.dot(x);
  BlockState st;
  for (const AffineLmi& lmi : lmis) {
    CMat b = lmi.evaluate(x);
    Eigen::LLT<CMat> llt(b);
    if (llt.info() != Eigen::Success) return false;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      const double d = l(i, i).real();
      if (!(d > 0.0) || !std::isfinite(d)) return false;
      phi -= 2.0 * std::log(d);
    }
  }
  *value = phi;
  return true;
}

}  // namespace

Result maximize(const RVec& c, const std::vector<AffineLmi>& lmis, RVec x0,
                const Options& options) {
  const int nvar = static_cast<int>(c.size());
  double degree = 0.0;
  for (const AffineLmi& lmi : lmis) degree += lmi.dim();

  std::vector<BlockState> states(lmis.size());
  auto refresh = [&](const RVec& x) {
    for (std::size_t i = 0; i < lmis.size(); ++i) {
      if (!factor(lmis[i].evaluate(x), &states[i])) return false;
    }
    return true;
  };
  if (!refresh(x0)) {
    throw Error(ErrorKind::Precondition,
                "barrier method needs a strictly feasible starting point");
  }

  Result result;
  RVec x = std::move(x0);
  double weight = 1.0;
  RVec grad(nvar);
  RMat hess(nvar, nvar);

  auto finish = [&](bool converged) {
    result.x = x;
    result.objective = c.dot(x);
    result.converged = converged;
    result.duals.clear();
    for (const BlockState& st : states) result.duals.push_back(st.w / weight);
    return result;
  };

  while (true) {
    // Centering by damped Newton.
    for (;;) {
      if (c.dot(x) >= options.target) {
        result.reached_target = true;
        result.upper_bound = std::numeric_limits<double>::infinity();
        return finish(false);
      }
      grad = -weight * c;
      hess.setZero();
      for (std::size_t i = 0; i < lmis.size(); ++i) {
        const CMat& w = states[i].w;
        const auto& terms = lmis[i].terms();
        for (std::size_t p = 0; p < terms.size(); ++p) {
          double g = 0.0;
          for (const SparseEntry& e : terms[p].entries) {
            g += (e.coeff * w(e.col, e.row)).real();
          }
          grad(terms[p].var) -= g;
          for (std::size_t q = p; q < terms.size(); ++q) {
            cplx h = 0.0;
            for (const SparseEntry& e : terms[p].entries) {
              for (const SparseEntry& f : terms[q].entries) {
                h += e.coeff * f.coeff * w(e.col, f.row) * w(f.col, e.row);
              }
            }
            hess(terms[p].var, terms[q].var) += h.real();
            if (q != p) hess(terms[q].var, terms[p].var) += h.real();
          }
        }
      }
      Eigen::LDLT<RMat> ldlt(hess);
      RVec step = ldlt.solve(-grad);
      if (!step.allFinite()) {
        // Fall back to a lightly regularized system.
        const double reg = 1e-12 * (1.0 + hess.diagonal().cwiseAbs().maxCoeff());
        step = (hess + reg * RMat::Identity(nvar, nvar)).ldlt().solve(-grad);
      }
      const double decrement = -grad.dot(step);
      if (!(decrement > 2e-10) || result.newton_steps >= options.max_newton) {
        break;
      }
      double phi0 = 0.0;
      barrier_value(c, lmis, x, weight, &phi0);
      double alpha = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls) {
        const RVec trial = x + alpha * step;
        double phi = 0.0;
        if (barrier_value(c, lmis, trial, weight, &phi) &&
            phi <= phi0 - 0.1 * alpha * decrement) {
          x = trial;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      ++result.newton_steps;
      if (!accepted || !refresh(x)) break;
    }
    refresh(x);
    // Slack for inexact centering.
    result.upper_bound = c.dot(x) + 1.5 * degree / weight;
    if (degree / weight < options.gap_tol) return finish(true);
    if (result.newton_steps >= options.max_newton) return finish(false);
    weight *= options.growth;
  }
}

}  // namespace specnp::sdp
