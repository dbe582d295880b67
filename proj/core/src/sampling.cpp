#include "qres/sampling.hpp"

#include "qres/detail/haar.hpp"

namespace qres {

CMatrix random_unitary(int n, Rng& rng) { return haar_unitary(n, rng); }

CVector random_vector(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

QState random_state(Dims dims, Rng& rng, int rank) {
  const int d = dims.total();
  const int k = rank > 0 && rank < d ? rank : d;
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(d, k);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;
  return make_state(dims, rho);
}

PureState random_pure(Dims dims, Rng& rng) {
  return make_pure(dims, random_vector(dims.total(), rng));
}

ObservableBasis random_basis(int dim, Subsystem subsystem, Rng& rng) {
  return ObservableBasis(random_unitary(dim, rng), subsystem);
}

Context random_context(Dims dims, Rng& rng) {
  ObservableBasis a = random_basis(dims.a(), Subsystem::A, rng);
  ObservableBasis b = random_basis(dims.b(), Subsystem::B, rng);
  return Context{a, b};
}

}  // namespace qres
