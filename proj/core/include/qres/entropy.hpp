#pragma once

#include <compare>
#include <limits>
#include <numbers>
#include <span>

#include "qres/qstate.hpp"

namespace qres {

// Entropic quantity in nats (natural logarithm). Relative entropy uses the
// +infinity value as a sentinel for disjoint supports.
struct Nats {
  double value = 0.0;

  constexpr Nats() = default;
  constexpr explicit Nats(double v) : value(v) {}

  static constexpr Nats infinity() { return Nats(std::numeric_limits<double>::infinity()); }
  bool is_infinite() const { return value == std::numeric_limits<double>::infinity(); }
  double bits() const { return value / std::numbers::ln2; }

  friend constexpr Nats operator+(Nats x, Nats y) { return Nats(x.value + y.value); }
  friend constexpr Nats operator-(Nats x, Nats y) { return Nats(x.value - y.value); }
  friend constexpr Nats operator-(Nats x) { return Nats(-x.value); }
  friend constexpr Nats operator*(double k, Nats x) { return Nats(k * x.value); }
  constexpr Nats& operator+=(Nats y) { value += y.value; return *this; }
  constexpr Nats& operator-=(Nats y) { value -= y.value; return *this; }
  friend constexpr auto operator<=>(Nats, Nats) = default;
};

inline Nats ln_dim(int d) { return Nats(std::log(static_cast<double>(d))); }

// -sum p ln p with 0 ln 0 = 0 and entries below the log floor ignored.
Nats shannon_entropy(std::span<const double> p);

// Von Neumann entropy of any Hermitian positive matrix (no validation).
Nats matrix_entropy(const CMatrix& rho);

Nats vn_entropy(const QState& s);

// I(rho) = ln d - S(rho).
Nats information(const QState& s);

// I_{A:B} = S(rho_A) + S(rho_B) - S(rho), clamped at 0 from -kEqual.
Nats mutual_information(const QState& s);

// Information about the other party conditioned on `given`:
// I_{B|A}(rho) = I(rho) - I(rho_A) for given == A.
Nats conditional_information(const QState& s, Subsystem given);

// S(rho || sigma); Nats::infinity() when supp(rho) is not inside supp(sigma).
Nats relative_entropy(const QState& rho, const QState& sigma);

}  // namespace qres
