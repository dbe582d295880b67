#pragma once

// Closed-form two-qubit entropies in the Bloch representation
//   rho = (1/4)(1 + r.sigma (x) 1 + 1 (x) s.sigma + sum T_ij sigma_i (x) sigma_j),
// independent of the matrix code paths in the library. A qubit basis enters
// only through the Bloch direction n of its first vector (a = +-1 <-> +-n).

#include <array>
#include <cmath>

#include "qres/qstate.hpp"

namespace qres::oracle {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }
inline double norm(const Vec3& x) { return std::sqrt(dot(x, x)); }
inline double xlogx(double p) { return p > 1e-300 ? -p * std::log(p) : 0.0; }

inline Vec3 bloch_direction(const ObservableBasis& b) {
  const CMatrix& u = b.unitary();
  const Complex c0 = u(0, 0);
  const Complex c1 = u(1, 0);
  const Complex off = std::conj(c0) * c1;
  return {2.0 * off.real(), 2.0 * off.imag(), std::norm(c0) - std::norm(c1)};
}

class TwoQubit {
 public:
  explicit TwoQubit(const QState& s) {
    static const CMatrix pauli[3] = {
        (CMatrix(2, 2) << 0, 1, 1, 0).finished(),
        (CMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
        (CMatrix(2, 2) << 1, 0, 0, -1).finished()};
    const CMatrix id = CMatrix::Identity(2, 2);
    const CMatrix& rho = s.matrix();
    for (int i = 0; i < 3; ++i) {
      r_[static_cast<std::size_t>(i)] = (rho * kron(pauli[i], id)).trace().real();
      s_[static_cast<std::size_t>(i)] = (rho * kron(id, pauli[i])).trace().real();
      for (int j = 0; j < 3; ++j) t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (rho * kron(pauli[i], pauli[j])).trace().real();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    for (int i = 0; i < 4; ++i) s_rho_ += xlogx(std::max(0.0, es.eigenvalues()(i)));
  }

  double entropy() const { return s_rho_; }

  // S(Phi_A rho) for Bloch direction n of the A basis.
  double dephased_a(const Vec3& n) const { return dephased(dot(n, r_), s_, t_n(n)); }
  double dephased_b(const Vec3& m) const { return dephased(dot(m, s_), r_, t_m(m)); }

  // S(Phi_A rho_A)
  double marginal_dephased_a(const Vec3& n) const { return binary(dot(n, r_)); }
  double marginal_dephased_b(const Vec3& m) const { return binary(dot(m, s_)); }

  // Shannon entropy of p_ab = <a b|rho|a b>.
  double joint_dephased(const Vec3& n, const Vec3& m) const {
    const double nr = dot(n, r_);
    const double ms = dot(m, s_);
    const double ntm = dot(n, t_m(m));
    double h = 0.0;
    for (int a : {1, -1})
      for (int b : {1, -1}) h += xlogx((1.0 + a * nr + b * ms + a * b * ntm) / 4.0);
    return h;
  }

  double marginal_entropy_a() const { return binary(norm(r_)); }
  double marginal_entropy_b() const { return binary(norm(s_)); }

  double discord_a(const Vec3& n) const {
    return marginal_entropy_a() - s_rho_ + dephased_a(n) - marginal_dephased_a(n);
  }

  double eta(const Vec3& n, const Vec3& m) const {
    return dephased_a(n) - s_rho_ - joint_dephased(n, m) + dephased_b(m);
  }

  double discord_symmetric(const Vec3& n, const Vec3& m) const {
    return marginal_entropy_a() + marginal_entropy_b() - s_rho_ - marginal_dephased_a(n) -
           marginal_dephased_b(m) + joint_dephased(n, m);
  }

 private:
  Vec3 t_n(const Vec3& n) const {  // T^T n
    Vec3 v{};
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) v[j] += t_[i][j] * n[i];
    return v;
  }
  Vec3 t_m(const Vec3& m) const {  // T m
    Vec3 v{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) v[i] += t_[i][j] * m[j];
    return v;
  }
  // Blocks (1/4)[(1 + a c) 1 + (y + a z).sigma] for a = +-1, c = n.x.
  static double dephased(double c, const Vec3& y, const Vec3& z) {
    double h = 0.0;
    for (int a : {1, -1}) {
      const Vec3 w{y[0] + a * z[0], y[1] + a * z[1], y[2] + a * z[2]};
      const double len = norm(w);
      h += xlogx((1.0 + a * c + len) / 4.0) + xlogx((1.0 + a * c - len) / 4.0);
    }
    return h;
  }
  static double binary(double c) { return xlogx((1.0 + c) / 2.0) + xlogx((1.0 - c) / 2.0); }

  Vec3 r_{};
  Vec3 s_{};
  std::array<Vec3, 3> t_{};
  double s_rho_ = 0.0;
};

}  // namespace qres::oracle
