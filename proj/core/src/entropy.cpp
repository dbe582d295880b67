#include "qres/entropy.hpp"

#include <cmath>

namespace qres {

Nats shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) {
    if (x > tol::kLogFloor) s -= x * std::log(x);
  }
  return Nats(s);
}

Nats matrix_entropy(const CMatrix& rho) {
  if (rho.rows() == 1) {
    const double x = rho(0, 0).real();
    return shannon_entropy(std::span<const double>(&x, 1));
  }
  const RVector w = hermitian_eigenvalues(rho);
  return shannon_entropy(std::span<const double>(w.data(), static_cast<std::size_t>(w.size())));
}

Nats vn_entropy(const QState& s) { return matrix_entropy(s.matrix()); }

Nats information(const QState& s) { return ln_dim(s.dim()) - vn_entropy(s); }

namespace {
void require_bipartite(const QState& s, const char* what) {
  if (!s.dims().bipartite()) {
    throw Error(ErrorKind::NotBipartite, std::string(what) + " needs a bipartite state");
  }
}
}  // namespace

Nats mutual_information(const QState& s) {
  require_bipartite(s, "mutual_information");
  const Nats mi = vn_entropy(partial_trace(s, Subsystem::A)) +
                  vn_entropy(partial_trace(s, Subsystem::B)) - vn_entropy(s);
  if (mi.value < 0.0 && mi.value >= -tol::kEqual) return Nats(0.0);
  return mi;
}

Nats conditional_information(const QState& s, Subsystem given) {
  require_bipartite(s, "conditional_information");
  return information(s) - information(partial_trace(s, given));
}

Nats relative_entropy(const QState& rho, const QState& sigma) {
  if (rho.dims() != sigma.dims()) {
    throw Error(ErrorKind::DimensionMismatch, "relative_entropy needs equal dims");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma.matrix());
  const RVector& mu = es.eigenvalues();
  const CMatrix& f = es.eigenvectors();
  // Tr rho ln sigma = sum_j <f_j|rho|f_j> ln mu_j
  double cross = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const double weight = (f.col(j).adjoint() * rho.matrix() * f.col(j))(0, 0).real();
    if (mu(j) < tol::kLogFloor) {
      if (weight > tol::kSupport) return Nats::infinity();
      continue;
    }
    cross += weight * std::log(mu(j));
  }
  const double value = -vn_entropy(rho).value - cross;
  return Nats(value < 0.0 && value >= -tol::kEqual ? 0.0 : value);
}

}  // namespace qres
