#include "qres/channels.hpp"

#include <cmath>
#include <sstream>

namespace qres {

namespace {

void check_basis(const ObservableBasis& basis, const Dims& dims) {
  if (dims.of(basis.subsystem()) != basis.dim()) {
    std::ostringstream msg;
    msg << "basis of dimension " << basis.dim() << " on subsystem "
        << (basis.subsystem() == Subsystem::A ? "A" : "B") << " does not fit dims ("
        << dims.a() << "," << dims.b() << ")";
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

CMatrix local_unitary(const ObservableBasis& basis, const Dims& dims) {
  if (basis.subsystem() == Subsystem::A) {
    return kron(basis.unitary(), CMatrix::Identity(dims.b(), dims.b()));
  }
  return kron(CMatrix::Identity(dims.a(), dims.a()), basis.unitary());
}

}  // namespace

MonitoringStrength::MonitoringStrength(double eps) : eps_(eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw Error(ErrorKind::EpsilonOutOfRange,
                "monitoring strength " + std::to_string(eps) + " outside [0,1]");
  }
}

Channel::Channel(std::vector<CMatrix> kraus, Dims input, Dims output, std::string label)
    : kraus_(std::move(kraus)), in_(input), out_(output), label_(std::move(label)) {
  if (kraus_.empty()) {
    throw Error(ErrorKind::NotTracePreserving, label_ + ": empty Kraus family");
  }
  for (const CMatrix& k : kraus_) {
    if (k.rows() != out_.total() || k.cols() != in_.total()) {
      throw Error(ErrorKind::DimensionMismatch, label_ + ": Kraus operator has wrong shape");
    }
  }
  const double res = completeness_residual();
  if (res > tol::kEqual) {
    throw Error(ErrorKind::NotTracePreserving,
                label_ + ": max |sum K^dagger K - 1| = " + std::to_string(res));
  }
}

double Channel::completeness_residual() const {
  CMatrix sum = CMatrix::Zero(in_.total(), in_.total());
  for (const CMatrix& k : kraus_) sum.noalias() += k.adjoint() * k;
  return (sum - CMatrix::Identity(in_.total(), in_.total())).cwiseAbs().maxCoeff();
}

QState Channel::apply(const QState& s) const {
  if (s.dims().total() != in_.total()) {
    throw Error(ErrorKind::DimensionMismatch, label_ + ": input dimension mismatch");
  }
  CMatrix out = CMatrix::Zero(out_.total(), out_.total());
  for (const CMatrix& k : kraus_) out.noalias() += k * s.matrix() * k.adjoint();
  return QState::unchecked(out_, std::move(out));
}

CMatrix embedded_projector(const ObservableBasis& basis, int index, const Dims& dims) {
  check_basis(basis, dims);
  const CMatrix p = basis.projector(index);
  if (basis.subsystem() == Subsystem::A) return kron(p, CMatrix::Identity(dims.b(), dims.b()));
  return kron(CMatrix::Identity(dims.a(), dims.a()), p);
}

QState phi_meas(const QState& s, const ObservableBasis& basis) {
  const Dims& dims = s.dims();
  check_basis(basis, dims);
  const CMatrix w = local_unitary(basis, dims);
  CMatrix rotated = w.adjoint() * s.matrix() * w;
  const int d = dims.total();
  const int db = dims.b();
  const bool on_a = basis.subsystem() == Subsystem::A;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const bool same = on_a ? (i / db == j / db) : (i % db == j % db);
      if (!same) rotated(i, j) = 0.0;
    }
  }
  return QState::unchecked(dims, w * rotated * w.adjoint());
}

QState phi_context(const QState& s, const Context& ctx) {
  return phi_meas(phi_meas(s, ctx.b), ctx.a);
}

QState phi_pair_incompatible(const QState& s, Subsystem subsystem) {
  const int dsub = s.dims().of(subsystem);
  if (dsub < 2) {
    throw Error(ErrorKind::NotBipartite, "pair map on a trivial subsystem");
  }
  const QState partial = phi_meas(s, fourier_basis(dsub, subsystem));
  return phi_meas(partial, computational_basis(dsub, subsystem));
}

QState phi_inc(const QState& s) {
  if (!s.dims().bipartite()) {
    throw Error(ErrorKind::NotBipartite, "phi_inc needs a bipartite state");
  }
  return phi_pair_incompatible(phi_pair_incompatible(s, Subsystem::B), Subsystem::A);
}

QState monitoring(const QState& s, const StateMap& destroyer, MonitoringStrength eps) {
  const double e = eps.value();
  if (e == 0.0) return s;
  const QState destroyed = destroyer(s);
  if (destroyed.dims().total() != s.dims().total()) {
    throw Error(ErrorKind::DimensionMismatch, "destroyer changes the dimension");
  }
  if (e == 1.0) return QState::unchecked(s.dims(), destroyed.matrix());
  return QState::unchecked(s.dims(), (1.0 - e) * s.matrix() + e * destroyed.matrix());
}

Channel identity_channel(const Dims& dims) {
  return Channel({CMatrix::Identity(dims.total(), dims.total())}, dims, dims, "identity");
}

Channel measurement_channel(const ObservableBasis& basis, const Dims& dims) {
  check_basis(basis, dims);
  std::vector<CMatrix> ops;
  ops.reserve(static_cast<std::size_t>(basis.dim()));
  for (int a = 0; a < basis.dim(); ++a) ops.push_back(embedded_projector(basis, a, dims));
  return Channel(std::move(ops), dims, dims,
                 basis.subsystem() == Subsystem::A ? "Phi_A" : "Phi_B");
}

Channel compose(const Channel& second, const Channel& first) {
  if (second.input_dims().total() != first.output_dims().total()) {
    throw Error(ErrorKind::DimensionMismatch, "compose: incompatible channels");
  }
  std::vector<CMatrix> ops;
  for (const CMatrix& k2 : second.kraus()) {
    for (const CMatrix& k1 : first.kraus()) {
      CMatrix prod = k2 * k1;
      if (prod.cwiseAbs().maxCoeff() >= tol::kKrausPrune) ops.push_back(std::move(prod));
    }
  }
  return Channel(std::move(ops), first.input_dims(), second.output_dims(),
                 second.label() + "*" + first.label());
}

Channel pair_incompatible_channel(const Dims& dims, Subsystem subsystem) {
  const int dsub = dims.of(subsystem);
  if (dsub < 2) throw Error(ErrorKind::NotBipartite, "pair map on a trivial subsystem");
  return compose(measurement_channel(computational_basis(dsub, subsystem), dims),
                 measurement_channel(fourier_basis(dsub, subsystem), dims));
}

Channel inc_channel(const Dims& dims) {
  if (!dims.bipartite()) throw Error(ErrorKind::NotBipartite, "phi_inc needs bipartite dims");
  Channel c = compose(pair_incompatible_channel(dims, Subsystem::A),
                      pair_incompatible_channel(dims, Subsystem::B));
  return Channel(c.kraus(), dims, dims, "Phi_inc");
}

Channel partial_trace_channel(const Dims& dims, Subsystem keep) {
  if (!dims.bipartite()) throw Error(ErrorKind::NotBipartite, "partial trace needs bipartite dims");
  const Subsystem traced = other(keep);
  const int dk = dims.of(keep);
  const int dt = dims.of(traced);
  const CMatrix id = CMatrix::Identity(dk, dk);
  std::vector<CMatrix> ops;
  for (int k = 0; k < dt; ++k) {
    CMatrix bra = CMatrix::Zero(1, dt);
    bra(0, k) = 1.0;
    ops.push_back(keep == Subsystem::A ? kron(id, bra) : kron(bra, id));
  }
  return Channel(std::move(ops), dims, Dims(dk, 1), "partial_trace");
}

Channel monitoring_kraus(const Channel& destroyer, MonitoringStrength eps) {
  const Dims& dims = destroyer.input_dims();
  if (destroyer.output_dims().total() != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch, "monitoring needs a d -> d destroyer");
  }
  const double e = eps.value();
  std::vector<CMatrix> ops;
  const CMatrix k0 = std::sqrt(1.0 - e) * CMatrix::Identity(dims.total(), dims.total());
  if (k0.cwiseAbs().maxCoeff() >= tol::kKrausPrune) ops.push_back(k0);
  for (const CMatrix& k : destroyer.kraus()) {
    CMatrix scaled = std::sqrt(e) * k;
    if (scaled.cwiseAbs().maxCoeff() >= tol::kKrausPrune) ops.push_back(std::move(scaled));
  }
  std::ostringstream label;
  label << "Lambda[" << destroyer.label() << ", eps=" << e << "]";
  return Channel(std::move(ops), dims, dims, label.str());
}

Channel monitoring_kraus(const ObservableBasis& basis, MonitoringStrength eps, const Dims& dims) {
  return monitoring_kraus(measurement_channel(basis, dims), eps);
}

StateMap as_map(const Destroyer& destroyer) {
  return std::visit(
      [](const auto& d) -> StateMap {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MeasureDestroyer>) {
          return [basis = d.basis](const QState& s) { return phi_meas(s, basis); };
        } else if constexpr (std::is_same_v<T, ContextDestroyer>) {
          return [ctx = d.context](const QState& s) { return phi_context(s, ctx); };
        } else if constexpr (std::is_same_v<T, PairIncompatibleDestroyer>) {
          return [sub = d.subsystem](const QState& s) { return phi_pair_incompatible(s, sub); };
        } else {
          return [](const QState& s) { return phi_inc(s); };
        }
      },
      destroyer);
}

Channel as_channel(const Destroyer& destroyer, const Dims& dims) {
  return std::visit(
      [&dims](const auto& d) -> Channel {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MeasureDestroyer>) {
          return measurement_channel(d.basis, dims);
        } else if constexpr (std::is_same_v<T, ContextDestroyer>) {
          return compose(measurement_channel(d.context.a, dims),
                         measurement_channel(d.context.b, dims));
        } else if constexpr (std::is_same_v<T, PairIncompatibleDestroyer>) {
          return pair_incompatible_channel(dims, d.subsystem);
        } else {
          return inc_channel(dims);
        }
      },
      destroyer);
}

std::string describe(const Destroyer& destroyer) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MeasureDestroyer>) {
          return d.basis.subsystem() == Subsystem::A ? "phi-meas(A)" : "phi-meas(B)";
        } else if constexpr (std::is_same_v<T, ContextDestroyer>) {
          return "phi-context";
        } else if constexpr (std::is_same_v<T, PairIncompatibleDestroyer>) {
          return d.subsystem == Subsystem::A ? "phi-pair(A)" : "phi-pair(B)";
        } else {
          return "phi-inc";
        }
      },
      destroyer);
}

}  // namespace qres
