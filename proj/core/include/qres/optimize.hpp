#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "qres/qstate.hpp"

namespace qres {

enum class Direction { Minimize, Maximize };

struct GridResolution {
  int theta = 61;
  int phi = 121;
};

// Knobs of the derivative-free basis searches.
//
// Qubit bases are parameterized by Bloch angles (theta, phi); single-basis
// searches scan a full-sphere grid, context searches scan a hemisphere grid
// per subsystem (antipodal Bloch vectors give the same projector pair) and
// then run alternating Nelder-Mead refinement. Qudit bases are W exp(iH(p))
// with W an anchor unitary and H(p) a Hermitian generator with n^2 real
// coefficients; they use random-restart coordinate refinement.
struct SearchConfig {
  int grid_theta = 61;
  int grid_phi = 121;
  int context_grid_theta = 7;
  int context_grid_phi = 13;
  int refine_iters = 200;
  double refine_tol = 1e-8;
  int refine_starts = 4;
  int random_restarts = 32;
  std::uint64_t seed = 0;
};

struct SearchDiagnostics {
  std::size_t grid_points = 0;
  std::size_t evaluations = 0;
  std::size_t cache_hits = 0;
  int starts = 0;
  int refine_iterations = 0;
  double grid_best = 0.0;
  // Gap between the best and the second-best distinct refined optimum;
  // infinity when only one optimum was found.
  double second_best_gap = std::numeric_limits<double>::infinity();
  bool flat = false;
};

using BasisObjective = std::function<double(const ObservableBasis&)>;
using ContextObjective = std::function<double(const Context&)>;

struct BasisSearchResult {
  double value;
  ObservableBasis basis;
  SearchDiagnostics diagnostics;
};

struct ContextSearchResult {
  double value;
  Context context;
  SearchDiagnostics diagnostics;
};

// |a0> = cos(t/2)|0> + e^{i p} sin(t/2)|1>, |a1> orthogonal.
ObservableBasis qubit_basis(double theta, double phi, Subsystem subsystem = Subsystem::A);

// Bloch angles of the first basis vector.
std::pair<double, double> qubit_angles(const ObservableBasis& basis);

// exp(i H(p)) for the fixed Hermitian operator basis of dimension n.
CMatrix generator_unitary(std::span<const double> params, int n);

BasisSearchResult optimize_basis(const BasisObjective& objective, int dim, Subsystem subsystem,
                                 Direction direction, const SearchConfig& cfg,
                                 std::span<const ObservableBasis> hints = {});

ContextSearchResult optimize_context(const ContextObjective& objective, const Dims& dims,
                                     Direction direction, const SearchConfig& cfg,
                                     std::span<const Context> hints = {});

// Exhaustive full-sphere grid, no refinement. Qubits only.
double brute_force_grid(const BasisObjective& objective, int dim, Subsystem subsystem,
                        Direction direction, GridResolution resolution);

// Exhaustive product of hemisphere grids, no refinement. Two qubits only.
double brute_force_grid(const ContextObjective& objective, const Dims& dims,
                        Direction direction, GridResolution resolution);

// Random unitary drawn from the Haar measure (QR of a Ginibre matrix).
template <class Rng>
CMatrix haar_unitary(int n, Rng& rng);

}  // namespace qres

#include "qres/detail/haar.hpp"
