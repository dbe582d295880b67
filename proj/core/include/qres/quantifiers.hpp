#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qres/channels.hpp"
#include "qres/entropy.hpp"
#include "qres/optimize.hpp"

namespace qres {

// Named quantifier value with its optimizer output. `checks` lists
// cross-check values (alternative forms, residuals, bounds) evaluated at the
// reported optimum.
struct QuantifierReport {
  std::string name;
  Nats value;
  std::optional<ObservableBasis> basis;
  std::optional<Context> context;
  SearchDiagnostics diagnostics;
  std::vector<std::pair<std::string, double>> checks;

  double check(const std::string& key) const;
};

// Values in [-tol::kClamp, 0) become exactly 0.
Nats clamp_nonnegative(Nats v);

// ---- coherence -----------------------------------------------------------

// C_A(rho) = I(rho) - I(Phi_A(rho)). A basis spanning the whole space treats
// rho as single-partite; a basis on one subsystem acts on that marginal.
Nats coherence(const QState& s, const ObservableBasis& basis);

// ---- entanglement --------------------------------------------------------

struct EntanglementForms {
  Nats shannon;                 // H({lambda_i})
  Nats via_information;         // I(psi) - I(Phi_Gamma(psi))
  Nats via_mutual_information;  // I_{A:B}(psi) - I_{A:B}(Phi_Gamma(psi))
};

EntanglementForms entanglement_pure_forms(const PureState& psi);
Nats entanglement_pure(const PureState& psi);

// Unrevealed measurement of the Schmidt observable Gamma_A.
ObservableBasis schmidt_observable(const PureState& psi);

double concurrence(const QState& s);
Nats eof_two_qubit(const QState& s);

// Minimum average pure-state entanglement over `samples` random ensemble
// decompositions of rho; an upper bound on the entanglement of formation.
Nats eof_ensemble_upper_bound(const QState& s, int samples, std::uint64_t seed = 0);

// ---- discord -------------------------------------------------------------

struct DiscordForms {
  Nats mutual_loss;        // I_{A:B}(rho) - I_{A:B}(Phi_A(rho))
  Nats local_surplus;      // [I(rho)-I(Phi_A rho)] - [I(rho_A (x) 1/d_B) - I(Phi_A(rho_A (x) 1/d_B))]
  Nats monitored_surplus;  // same with rho_A (x) 1/d_B produced by Phi_BB'
  Nats conditional_flow;   // I_{B|A}(rho) - I_{B|A}(Phi_A(rho))
  double max_residual() const;
};

DiscordForms discord_basis_forms(const QState& s, const ObservableBasis& basis);
Nats discord_basis(const QState& s, const ObservableBasis& basis);
QuantifierReport discord_oneway(const QState& s, Subsystem side, const SearchConfig& cfg = {},
                                std::span<const ObservableBasis> hints = {});

struct SymmetricDiscordForms {
  Nats mutual_loss;    // I_{A:B}(rho) - I_{A:B}(Phi_A Phi_B(rho))
  Nats one_way_sum;    // D_A(rho) + D_B(Phi_A(rho))
  Nats three_process;  // information balance of Phi_A Phi_B, Phi_A, Phi_B
  double max_residual() const;
};

SymmetricDiscordForms discord_symmetric_forms(const QState& s, const Context& ctx);
Nats discord_symmetric_basis(const QState& s, const Context& ctx);
QuantifierReport discord_symmetric(const QState& s, const SearchConfig& cfg = {},
                                   std::span<const Context> hints = {});

// ---- irreality -----------------------------------------------------------

struct IrrealityForms {
  Nats information_loss;    // I(rho) - I(Phi_A(rho))
  Nats entropy_gap;         // S(Phi_A(rho)) - S(rho)
  Nats relative_entropy;    // S(rho || Phi_A(rho))
  Nats local_plus_discord;  // C_A(rho_A) + D_A(rho)
  double max_residual() const;
};

IrrealityForms irreality_forms(const QState& s, const ObservableBasis& basis);
Nats irreality(const QState& s, const ObservableBasis& basis);

struct IrrealityBound {
  Nats bound;               // Shannon entropy of p_a = <a|rho_A|a>
  Nats irreality;
  bool pure = false;
  bool saturated = false;   // bound - irreality <= 1e-8
  Nats normalized_reading;  // S(Phi_A(rho_A) (x) 1/d_B) = bound + ln d_B
  Nats literal_reading;     // -Tr X ln X for X = Phi_A(rho_A) (x) 1_B, = d_B * bound
};

IrrealityBound irreality_bound(const QState& s, const ObservableBasis& basis);

// ---- realism-based nonlocality ------------------------------------------

struct RbnForms {
  Nats eta;                  // J_A(rho) - J_A(Phi_B(rho))
  Nats discord_difference;   // D_A(rho) - D_A(Phi_B(rho))
  Nats information_surplus;  // [I(rho)-I(Phi_A rho)] - [I(Phi_B rho) - I(Phi_A Phi_B rho)]
  Nats exchanged;            // J_B(rho) - J_B(Phi_A(rho))
  double max_residual() const;
};

RbnForms rbn_contextual_forms(const QState& s, const Context& ctx);
Nats rbn_contextual(const QState& s, const Context& ctx);
QuantifierReport rbn(const QState& s, const SearchConfig& cfg = {},
                     std::span<const Context> hints = {});

// ---- generic correlation -------------------------------------------------

enum class Scope { A, B, Global };

// min over bases in scope of I(rho) - I(Phi_A(rho)).
QuantifierReport generic_correlation(const QState& s, Scope scope, const SearchConfig& cfg = {});

// ---- monotonicity under the paired monitorings --------------------------

enum class Resource {
  Coherence,
  PureEntanglement,
  OneWayDiscord,
  SymmetricDiscord,
  Irreality,
  Rbn,
};

std::string_view to_string(Resource r);

// A quantifier with the destroying map of its monitoring. `optimum` carries
// the optimal context of rho for the optimized quantifiers; it warm-starts
// the re-optimization at each monitoring strength.
struct Pairing {
  Resource resource;
  Destroyer destroyer;
  std::optional<Context> optimum;
};

// Builds the monitoring paired with `resource` for state s: Phi_A for
// coherence and irreality (basis required), Phi_Gamma for pure-state
// entanglement, Phi_Abar for one-way discord, Phi_Abar Phi_Bbar for
// symmetric discord and Phi_Rbar (Rbar = Abar) for nonlocality.
Pairing paired_monitoring(const QState& s, Resource resource,
                          const std::optional<ObservableBasis>& basis, const SearchConfig& cfg);

struct MonotonicityReport {
  Resource resource;
  std::string destroyer;
  std::vector<double> eps;
  std::vector<double> values;
  double max_increase = 0.0;
  double final_value = 0.0;
  bool passed = false;
};

inline constexpr double kMonotonicityTol = 1e-8;

// Evaluates R(Lambda_eps(rho)) along eps_grid. Throws UnknownPairing when
// the destroyer is not the one paired with the resource.
MonotonicityReport resource_monotonicity_check(const QState& s, const Pairing& pairing,
                                               std::span<const double> eps_grid,
                                               const SearchConfig& cfg = {});

// Quantifier value of a resource at state s, re-optimizing where needed.
double evaluate_resource(const QState& s, const Pairing& pairing, const SearchConfig& cfg);

}  // namespace qres
