#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qres/qstate.hpp"

namespace qres {

using StateMap = std::function<QState(const QState&)>;

// Strength of a monitoring, 0 <= eps <= 1.
class MonitoringStrength {
 public:
  explicit MonitoringStrength(double eps);
  double value() const noexcept { return eps_; }

 private:
  double eps_;
};

// CPTP map in operator-sum form, rho -> sum_k K_k rho K_k^dagger.
class Channel {
 public:
  // Throws NotTracePreserving when sum_k K_k^dagger K_k deviates from the
  // identity by more than tol::kEqual.
  Channel(std::vector<CMatrix> kraus, Dims input, Dims output, std::string label);

  const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }
  const Dims& input_dims() const noexcept { return in_; }
  const Dims& output_dims() const noexcept { return out_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return kraus_.size(); }

  QState apply(const QState& s) const;
  double completeness_residual() const;

 private:
  std::vector<CMatrix> kraus_;
  Dims in_;
  Dims out_;
  std::string label_;
};

// Operator A_a (x) 1_B (or 1_A (x) B_b) for the basis' own subsystem;
// single-partite states (d_b == 1) take an A-tagged basis on the whole space.
CMatrix embedded_projector(const ObservableBasis& basis, int index, const Dims& dims);

// Unrevealed measurement Phi_A(rho) = sum_a (A_a (x) 1) rho (A_a (x) 1).
QState phi_meas(const QState& s, const ObservableBasis& basis);

// Phi_A Phi_B.
QState phi_context(const QState& s, const Context& ctx);

// Phi_A Phi_A' with A' the Fourier partner of the computational basis:
// (1/d_sub) (x) rho_other on the chosen subsystem.
QState phi_pair_incompatible(const QState& s, Subsystem subsystem);

// Phi_AA' Phi_BB' which sends every state to 1/d.
QState phi_inc(const QState& s);

// Lambda_eps(rho) = (1 - eps) rho + eps Phi(rho).
QState monitoring(const QState& s, const StateMap& destroyer, MonitoringStrength eps);

// ---- Kraus families ------------------------------------------------------

Channel identity_channel(const Dims& dims);
Channel measurement_channel(const ObservableBasis& basis, const Dims& dims);
Channel pair_incompatible_channel(const Dims& dims, Subsystem subsystem);
Channel inc_channel(const Dims& dims);
Channel partial_trace_channel(const Dims& dims, Subsystem keep);

// second o first, Kraus products with near-zero products pruned.
Channel compose(const Channel& second, const Channel& first);

// {sqrt(1-eps) 1, sqrt(eps) K_j}, dropping operators with max-norm < 1e-15.
Channel monitoring_kraus(const Channel& destroyer, MonitoringStrength eps);
Channel monitoring_kraus(const ObservableBasis& basis, MonitoringStrength eps, const Dims& dims);

// ---- destroyer specifications --------------------------------------------

struct MeasureDestroyer {
  ObservableBasis basis;
};
struct ContextDestroyer {
  Context context;
};
struct PairIncompatibleDestroyer {
  Subsystem subsystem;
};
struct IncDestroyer {};

// Named resource-destroying map usable both as a closure and as a Kraus family.
using Destroyer =
    std::variant<MeasureDestroyer, ContextDestroyer, PairIncompatibleDestroyer, IncDestroyer>;

StateMap as_map(const Destroyer& destroyer);
Channel as_channel(const Destroyer& destroyer, const Dims& dims);
std::string describe(const Destroyer& destroyer);

}  // namespace qres
