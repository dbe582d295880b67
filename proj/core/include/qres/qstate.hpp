#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qres/error.hpp"

namespace qres {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Numerical tolerances shared by every module.
namespace tol {
inline constexpr double kHermitian = 1e-9;    // input validation
inline constexpr double kTrace = 1e-9;        // input validation
inline constexpr double kPsd = 1e-9;          // negative-eigenvalue repair window
inline constexpr double kEqual = 1e-10;       // internal equality checks
inline constexpr double kLogFloor = 1e-14;    // eigenvalues below contribute 0 to S
inline constexpr double kSupport = 1e-10;     // support detection in S(rho||sigma)
inline constexpr double kKrausPrune = 1e-15;  // max-norm below which a Kraus op is dropped
inline constexpr double kClamp = 1e-9;        // quantifier values in [-kClamp, 0) become 0
}  // namespace tol

enum class Subsystem { A, B };

inline Subsystem other(Subsystem s) noexcept {
  return s == Subsystem::A ? Subsystem::B : Subsystem::A;
}

// Bipartite dimension split of H = H_A (x) H_B. d_b == 1 encodes a
// single-partite state. Composite index of |a>|b> is a * d_b + b.
class Dims {
 public:
  Dims(int d_a, int d_b);

  int a() const noexcept { return d_a_; }
  int b() const noexcept { return d_b_; }
  int total() const noexcept { return d_a_ * d_b_; }
  int of(Subsystem s) const noexcept { return s == Subsystem::A ? d_a_ : d_b_; }
  bool bipartite() const noexcept { return d_a_ > 1 && d_b_ > 1; }
  Dims swapped() const { return Dims(d_b_, d_a_); }

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  int d_a_;
  int d_b_;
};

// Validated density operator. Immutable after construction.
class QState {
 public:
  const Dims& dims() const noexcept { return dims_; }
  const CMatrix& matrix() const noexcept { return rho_; }
  int dim() const noexcept { return dims_.total(); }

  // Wraps a matrix already known to be a density operator (output of a CPTP
  // map applied to a valid state). Skips the eigenvalue check.
  static QState unchecked(Dims dims, CMatrix rho);

 private:
  QState(Dims dims, CMatrix rho) : dims_(dims), rho_(std::move(rho)) {}
  friend QState make_state(Dims dims, const CMatrix& matrix);

  Dims dims_;
  CMatrix rho_;
};

class PureState {
 public:
  const Dims& dims() const noexcept { return dims_; }
  const CVector& vector() const noexcept { return psi_; }
  QState to_state() const;

 private:
  PureState(Dims dims, CVector psi) : dims_(dims), psi_(std::move(psi)) {}
  friend PureState make_pure(Dims dims, const CVector& psi);

  Dims dims_;
  CVector psi_;
};

// Orthonormal basis {|a>} of one subsystem, i.e. the rank-1 projectors
// A_a = |a><a| of a nondegenerate observable. Vectors are the columns of
// a unitary matrix.
class ObservableBasis {
 public:
  ObservableBasis(CMatrix vectors, Subsystem subsystem);

  int dim() const noexcept { return static_cast<int>(u_.cols()); }
  Subsystem subsystem() const noexcept { return subsystem_; }
  const CMatrix& unitary() const noexcept { return u_; }
  CVector vector(int i) const { return u_.col(i); }
  CMatrix projector(int i) const { return u_.col(i) * u_.col(i).adjoint(); }
  ObservableBasis on(Subsystem s) const { return ObservableBasis(u_, s, Trusted{}); }

  // max_{a,a'} || |a><a| - |a'><a'| || style distance: largest deviation
  // between the projector families, insensitive to phases and ordering of
  // equal projectors only up to a permutation check.
  double projector_distance(const ObservableBasis& other) const;

 private:
  struct Trusted {};
  ObservableBasis(CMatrix vectors, Subsystem subsystem, Trusted)
      : u_(std::move(vectors)), subsystem_(subsystem) {}

  CMatrix u_;
  Subsystem subsystem_;
};

// A pair of observables, one per subsystem.
struct Context {
  ObservableBasis a;
  ObservableBasis b;
};

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // lambda_i, descending, sum to 1
  ObservableBasis basis_a;
  ObservableBasis basis_b;
  bool swapped = false;  // computed on the transposed coefficient matrix
};

// ---- construction --------------------------------------------------------

QState make_state(Dims dims, const CMatrix& matrix);
PureState make_pure(Dims dims, const CVector& psi);
QState maximally_mixed(Dims dims);
QState from_pure(Dims dims, const CVector& psi);

double purity(const QState& s);
bool is_pure(const QState& s, double tol = 1e-10);
// Dominant eigenvector of a pure state; NotPure if Tr rho^2 differs from 1.
PureState to_pure(const QState& s);

ObservableBasis computational_basis(int dim, Subsystem subsystem = Subsystem::A);
ObservableBasis fourier_basis(int dim, Subsystem subsystem = Subsystem::A);

// ---- structure -----------------------------------------------------------

CMatrix kron(const CMatrix& a, const CMatrix& b);

QState tensor(const QState& a, const QState& b);
QState tensor(const QState& a, const QState& b, Dims target);

// Tr over the complementary subsystem via the Kraus sum
// sum_k M_k rho M_k^dagger with M_k = 1_A (x) <b_k| (or <a_k| (x) 1_B).
QState partial_trace(const QState& s, Subsystem keep);

// Same map by direct index contraction. Independent route used as a
// cross-check.
CMatrix partial_trace_contraction(const CMatrix& rho, Dims dims, Subsystem keep);

// Reorders H_A (x) H_B into H_B (x) H_A.
QState swap_subsystems(const QState& s);

// Treat the whole space as one party: dims (d, 1).
QState flatten(const QState& s);

SchmidtDecomposition schmidt(const PureState& psi);

// Eigenvalues of a Hermitian matrix, ascending.
RVector hermitian_eigenvalues(const CMatrix& m);

double hermitian_residual(const CMatrix& m);

}  // namespace qres
