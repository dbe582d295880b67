#pragma once

#include "qres/channels.hpp"
#include "qres/entropy.hpp"

namespace qres {

// Stinespring dilation of a channel: a unitary on H_S (x) H_X with the
// ancilla X as the right tensor factor, such that
// Tr_X[U (rho (x) |x0><x0|) U^dagger] equals the channel output.
struct Dilation {
  Dims system_dims;
  int d_x = 1;
  CMatrix u;
  int x0 = 0;

  // U (rho (x) |x0><x0|) U^dagger on the joint space, dims (d, d_x).
  CMatrix evolve(const QState& s) const;
  double unitarity_residual() const;
};

// Bookkeeping of the dilated monitoring experiment, all values in nats.
struct FlowLedger {
  Nats i_initial;           // I(rho)
  Nats i_final;             // I(Lambda_eps(rho)) from the reduced joint state
  Nats delta_i_x;           // I(rho_X(t)) - ln d_X
  Nats delta_i_xs_mutual;   // I_{X:S}(rho(t))
  Nats delta_i_cond;        // I_{X|S}(t) - I_{X|S}(0)
  Nats residual;            // |i_initial - i_final - delta_i_cond|
  double reduction_error = 0.0;  // max |Tr_X rho(t) - Lambda_eps(rho)|
  int d_x = 1;
};

struct InformationParcels {
  Nats i_s;
  Nats i_x;
  Nats i_mutual;
  Nats i_total;
};

// d_x equals the number of Kraus operators; the columns fixed by the Kraus
// family are completed to a unitary by Gram-Schmidt over the standard basis.
Dilation dilate(const Channel& channel, const Dims& dims);

FlowLedger flow_ledger(const QState& s, const Destroyer& destroyer, MonitoringStrength eps);

// Splits I(joint) = I(rho_S) + I(rho_X) + I_{S:X}. joint must be bipartite
// across the S|X cut (dims (d_S, d_X)).
InformationParcels total_information_decomposition(const QState& joint);

}  // namespace qres
