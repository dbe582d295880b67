#include "qres/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qres {

namespace {

std::string shape(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// Rotate the columns so the first component with modulus above the noise
// floor is real and positive. Returns the applied phase factor.
Complex fix_phase(Eigen::Ref<CVector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12) {
      const Complex phase = std::conj(v(i)) / mag;
      v *= phase;
      return phase;
    }
  }
  return Complex(1.0, 0.0);
}

}  // namespace

Dims::Dims(int d_a, int d_b) : d_a_(d_a), d_b_(d_b) {
  if (d_a < 1 || d_b < 1 || d_a * d_b < 2) {
    throw Error(ErrorKind::DimensionMismatch,
                "dims (" + std::to_string(d_a) + "," + std::to_string(d_b) +
                    ") must be positive with total dimension >= 2");
  }
}

QState QState::unchecked(Dims dims, CMatrix rho) {
  return QState(dims, std::move(rho));
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double hermitian_residual(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

QState make_state(Dims dims, const CMatrix& matrix) {
  const int d = dims.total();
  if (matrix.rows() != d || matrix.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix is " + shape(matrix.rows(), matrix.cols()) +
                    " but dims require " + shape(d, d));
  }
  if (!matrix.allFinite()) {
    throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
  }
  const double herm = hermitian_residual(matrix);
  if (herm > tol::kHermitian) {
    throw Error(ErrorKind::NotHermitian,
                "max |rho - rho^dagger| = " + std::to_string(herm));
  }
  CMatrix rho = matrix;
  if (herm > 0.0) rho = (matrix + matrix.adjoint()) / 2.0;

  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    throw Error(ErrorKind::NotNormalized, "trace = " + std::to_string(tr));
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  RVector w = es.eigenvalues();
  if (w.minCoeff() < -tol::kPsd) {
    throw Error(ErrorKind::NotPositive,
                "min eigenvalue = " + std::to_string(w.minCoeff()));
  }
  if (w.maxCoeff() > 1.0 + tol::kPsd) {
    throw Error(ErrorKind::NotPositive,
                "max eigenvalue = " + std::to_string(w.maxCoeff()));
  }
  if (w.minCoeff() < 0.0 || w.maxCoeff() > 1.0) {
    w = w.cwiseMax(0.0).cwiseMin(1.0);
    rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  }
  // Leave exactly normalized inputs bit-identical.
  const double tr2 = rho.trace().real();
  if (std::abs(tr2 - 1.0) > 8.0 * d * std::numeric_limits<double>::epsilon()) {
    rho /= tr2;
  }
  return QState(dims, std::move(rho));
}

PureState make_pure(Dims dims, const CVector& psi) {
  if (psi.size() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch,
                "vector has " + std::to_string(psi.size()) +
                    " components but dims require " + std::to_string(dims.total()));
  }
  const double n2 = psi.squaredNorm();
  if (std::abs(n2 - 1.0) > tol::kTrace) {
    throw Error(ErrorKind::NotNormalized, "<psi|psi> = " + std::to_string(n2));
  }
  return PureState(dims, psi / std::sqrt(n2));
}

QState PureState::to_state() const {
  return QState::unchecked(dims_, psi_ * psi_.adjoint());
}

QState from_pure(Dims dims, const CVector& psi) {
  return make_pure(dims, psi).to_state();
}

QState maximally_mixed(Dims dims) {
  const int d = dims.total();
  return QState::unchecked(dims, CMatrix::Identity(d, d) / static_cast<double>(d));
}

ObservableBasis::ObservableBasis(CMatrix vectors, Subsystem subsystem)
    : u_(std::move(vectors)), subsystem_(subsystem) {
  if (u_.rows() != u_.cols() || u_.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch,
                "basis matrix must be square, got " + shape(u_.rows(), u_.cols()));
  }
  const double dev =
      (u_.adjoint() * u_ - CMatrix::Identity(u_.cols(), u_.cols())).cwiseAbs().maxCoeff();
  if (dev > tol::kHermitian) {
    throw Error(ErrorKind::NotOrthonormal,
                "max |<a|a'> - delta| = " + std::to_string(dev));
  }
}

double ObservableBasis::projector_distance(const ObservableBasis& other) const {
  if (other.dim() != dim()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i) {
    const CMatrix p = projector(i);
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < other.dim(); ++j) {
      best = std::min(best, (p - other.projector(j)).cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, best);
  }
  return worst;
}

ObservableBasis computational_basis(int dim, Subsystem subsystem) {
  return ObservableBasis(CMatrix::Identity(dim, dim), subsystem);
}

ObservableBasis fourier_basis(int dim, Subsystem subsystem) {
  if (dim < 2) {
    throw Error(ErrorKind::DimensionMismatch, "fourier basis needs dim >= 2");
  }
  CMatrix f(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) {
      // reduce jk mod d first so large products keep full phase accuracy
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) / dim;
      f(k, j) = std::polar(norm, angle);
    }
  }
  return ObservableBasis(f, subsystem);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

QState tensor(const QState& a, const QState& b) {
  return tensor(a, b, Dims(a.dim(), b.dim()));
}

QState tensor(const QState& a, const QState& b, Dims target) {
  if (target.total() != a.dim() * b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "target dims total " + std::to_string(target.total()) +
                    " differs from product " + std::to_string(a.dim() * b.dim()));
  }
  return QState::unchecked(target, kron(a.matrix(), b.matrix()));
}

QState partial_trace(const QState& s, Subsystem keep) {
  const Dims& dims = s.dims();
  const Subsystem traced = other(keep);
  if (dims.of(traced) < 2 || dims.of(keep) < 1 || !dims.bipartite()) {
    throw Error(ErrorKind::NotBipartite, "partial trace needs d_a > 1 and d_b > 1");
  }
  const int dk = dims.of(keep);
  const int dt = dims.of(traced);
  const CMatrix id = CMatrix::Identity(dk, dk);
  CMatrix out = CMatrix::Zero(dk, dk);
  for (int k = 0; k < dt; ++k) {
    CMatrix bra = CMatrix::Zero(1, dt);
    bra(0, k) = 1.0;
    const CMatrix m = keep == Subsystem::A ? kron(id, bra) : kron(bra, id);
    out.noalias() += m * s.matrix() * m.adjoint();
  }
  return QState::unchecked(Dims(dk, 1), std::move(out));
}

CMatrix partial_trace_contraction(const CMatrix& rho, Dims dims, Subsystem keep) {
  const int da = dims.a();
  const int db = dims.b();
  if (keep == Subsystem::A) {
    CMatrix out = CMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
    return out;
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
  return out;
}

QState swap_subsystems(const QState& s) {
  const int da = s.dims().a();
  const int db = s.dims().b();
  const int d = da * db;
  CMatrix out(d, d);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2)
          out(b * da + a, b2 * da + a2) = s.matrix()(a * db + b, a2 * db + b2);
  return QState::unchecked(Dims(db, da), std::move(out));
}

QState flatten(const QState& s) {
  return QState::unchecked(Dims(s.dim(), 1), s.matrix());
}

SchmidtDecomposition schmidt(const PureState& psi) {
  const Dims& dims = psi.dims();
  const int da = dims.a();
  const int db = dims.b();
  // Coefficient matrix M(a, b) = <a b|psi>.
  CMatrix m(da, db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) m(a, b) = psi.vector()(a * db + b);

  const bool swapped = da > db;
  const CMatrix target = swapped ? CMatrix(m.transpose()) : m;
  Eigen::JacobiSVD<CMatrix> svd(target, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // target = U S V^dagger  =>  |psi> = sum_i s_i |u_i> (x) |conj(v_i)>
  CMatrix left = svd.matrixU();
  CMatrix right = svd.matrixV().conjugate();
  const RVector sv = svd.singularValues();

  for (Eigen::Index i = 0; i < left.cols(); ++i) {
    const Complex ph = fix_phase(left.col(i));
    if (i < right.cols()) right.col(i) *= std::conj(ph);
  }
  CMatrix ua = swapped ? right : left;
  CMatrix ub = swapped ? left : right;
  if (swapped) {
    // Keep the A vectors in the canonical phase convention.
    for (Eigen::Index i = 0; i < ua.cols(); ++i) {
      const Complex ph = fix_phase(ua.col(i));
      if (i < ub.cols()) ub.col(i) *= std::conj(ph);
    }
  }

  std::vector<double> lambda(static_cast<std::size_t>(sv.size()));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    lambda[static_cast<std::size_t>(i)] = sv(i) * sv(i);
    sum += sv(i) * sv(i);
  }
  for (double& l : lambda) l /= sum;

  return SchmidtDecomposition{std::move(lambda), ObservableBasis(ua, Subsystem::A),
                              ObservableBasis(ub, Subsystem::B), swapped};
}

double purity(const QState& s) { return (s.matrix() * s.matrix()).trace().real(); }

bool is_pure(const QState& s, double tol) { return std::abs(purity(s) - 1.0) <= tol; }

PureState to_pure(const QState& s) {
  if (!is_pure(s)) throw Error(ErrorKind::NotPure, "state is mixed");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.matrix());
  const Eigen::Index top = es.eigenvalues().size() - 1;
  return make_pure(s.dims(), es.eigenvectors().col(top).normalized());
}

}  // namespace qres
