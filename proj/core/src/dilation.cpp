#include "qres/dilation.hpp"

#include <cmath>

namespace qres {

Dilation dilate(const Channel& channel, const Dims& dims) {
  if (channel.input_dims().total() != dims.total() ||
      channel.output_dims().total() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch, "dilate: channel does not act on dims");
  }
  const double res = channel.completeness_residual();
  if (res > tol::kEqual) {
    throw Error(ErrorKind::NotTracePreserving, "dilate: Kraus completeness fails");
  }
  const int d = dims.total();
  const int dx = static_cast<int>(channel.size());
  const int n = d * dx;
  CMatrix u = CMatrix::Zero(n, n);
  std::vector<bool> filled(static_cast<std::size_t>(n), false);

  // Reference slice: U (|i> (x) |0>) = sum_j (K_j |i>) (x) |j>.
  for (int i = 0; i < d; ++i) {
    const int col = i * dx;
    for (int j = 0; j < dx; ++j) {
      const CMatrix& k = channel.kraus()[static_cast<std::size_t>(j)];
      for (int r = 0; r < d; ++r) u(r * dx + j, col) = k(r, i);
    }
    filled[static_cast<std::size_t>(col)] = true;
  }

  // Complete the remaining columns from the identity seed basis.
  int seed = 0;
  for (int col = 0; col < n; ++col) {
    if (filled[static_cast<std::size_t>(col)]) continue;
    for (; seed < n; ++seed) {
      CVector v = CVector::Zero(n);
      v(seed) = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (int c = 0; c < n; ++c) {
          if (!filled[static_cast<std::size_t>(c)]) continue;
          v -= u.col(c) * u.col(c).dot(v);
        }
      }
      const double norm = v.norm();
      if (norm > 1e-6) {
        u.col(col) = v / norm;
        filled[static_cast<std::size_t>(col)] = true;
        ++seed;
        break;
      }
    }
  }
  return Dilation{dims, dx, std::move(u), 0};
}

CMatrix Dilation::evolve(const QState& s) const {
  CMatrix ancilla = CMatrix::Zero(d_x, d_x);
  ancilla(x0, x0) = 1.0;
  const CMatrix joint0 = kron(s.matrix(), ancilla);
  return u * joint0 * u.adjoint();
}

double Dilation::unitarity_residual() const {
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

FlowLedger flow_ledger(const QState& s, const Destroyer& destroyer, MonitoringStrength eps) {
  const Dims& dims = s.dims();
  const Channel lambda = monitoring_kraus(as_channel(destroyer, dims), eps);
  const Dilation dil = dilate(lambda, dims);
  const int d = dims.total();
  const Dims joint_dims(d, dil.d_x);
  const CMatrix joint = dil.evolve(s);

  const CMatrix rho_s = partial_trace_contraction(joint, joint_dims, Subsystem::A);
  const CMatrix rho_x = partial_trace_contraction(joint, joint_dims, Subsystem::B);
  const Nats s_joint = matrix_entropy(joint);
  const Nats s_sys = matrix_entropy(rho_s);
  const Nats s_anc = matrix_entropy(rho_x);
  const Nats ln_dx = ln_dim(dil.d_x);

  FlowLedger ledger;
  ledger.d_x = dil.d_x;
  ledger.i_initial = information(s);
  ledger.i_final = ln_dim(d) - s_sys;
  // I(rho_X) - ln d_X = -S(rho_X)
  ledger.delta_i_x = (ln_dx - s_anc) - ln_dx;
  ledger.delta_i_xs_mutual = s_sys + s_anc - s_joint;
  // I_{X|S} = ln d_X - (S(joint) - S(rho_S)); at t = 0 it equals ln d_X.
  ledger.delta_i_cond = (ln_dx - (s_joint - s_sys)) - ln_dx;
  ledger.residual = Nats(std::abs((ledger.i_initial - ledger.i_final - ledger.delta_i_cond).value));

  const QState direct = monitoring(s, as_map(destroyer), eps);
  ledger.reduction_error = (rho_s - direct.matrix()).cwiseAbs().maxCoeff();
  return ledger;
}

InformationParcels total_information_decomposition(const QState& joint) {
  if (!joint.dims().bipartite()) {
    throw Error(ErrorKind::NotBipartite, "decomposition needs the S|X cut");
  }
  const QState rs = partial_trace(joint, Subsystem::A);
  const QState rx = partial_trace(joint, Subsystem::B);
  return InformationParcels{information(rs), information(rx), mutual_information(joint),
                            information(joint)};
}

}  // namespace qres
