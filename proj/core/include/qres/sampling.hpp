#pragma once

#include <cstdint>
#include <random>

#include "qres/qstate.hpp"

namespace qres {

using Rng = std::mt19937_64;

// Haar-distributed unitary of size n.
CMatrix random_unitary(int n, Rng& rng);

// Normalized complex Gaussian vector, Haar-distributed on the unit sphere.
CVector random_vector(int n, Rng& rng);

// Ginibre-induced mixed state G G^dag / Tr, full rank almost surely.
// rank < total restricts G to that many columns.
QState random_state(Dims dims, Rng& rng, int rank = 0);

PureState random_pure(Dims dims, Rng& rng);

ObservableBasis random_basis(int dim, Subsystem subsystem, Rng& rng);
Context random_context(Dims dims, Rng& rng);

}  // namespace qres
