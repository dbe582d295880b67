#pragma once

#include <cmath>

#include "qres/quantifiers.hpp"
#include "qres/sampling.hpp"

namespace qres::test {

inline const double kLn2 = std::log(2.0);

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline CVector ket(std::initializer_list<Complex> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (Complex a : amps) v(i++) = a;
  return v;
}

inline CVector bell_vector() {
  const double h = 1.0 / std::sqrt(2.0);
  return ket({h, 0, 0, h});
}

inline QState bell() { return from_pure(Dims(2, 2), bell_vector()); }

inline QState werner(double w) {
  const CVector v = bell_vector();
  return make_state(Dims(2, 2), w * (v * v.adjoint()) + (1.0 - w) * CMatrix::Identity(4, 4) / 4.0);
}

// 1/2 (|00><00| + |11><11|)
inline QState classical_correlated() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return make_state(Dims(2, 2), m);
}

inline QState diag_state(Dims dims, std::initializer_list<double> p) {
  CMatrix m = CMatrix::Zero(dims.total(), dims.total());
  int i = 0;
  for (double x : p) m(i, i) = x, ++i;
  return make_state(dims, m);
}

inline QState plus_state() {
  const double h = 1.0 / std::sqrt(2.0);
  return from_pure(Dims(2, 1), ket({h, h}));
}

}  // namespace qres::test
