#include "qres/quantifiers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qres/detail/haar.hpp"

namespace qres {

namespace {

void require_bipartite(const QState& s, const char* what) {
  if (!s.dims().bipartite()) {
    throw Error(ErrorKind::NotBipartite, std::string(what) + " needs a bipartite state");
  }
}

double spread(std::initializer_list<Nats> values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Nats v : values) {
    lo = std::min(lo, v.value);
    hi = std::max(hi, v.value);
  }
  return hi - lo;
}

// Marginal of `side`, as a single-partite state.
QState marginal(const QState& s, Subsystem side) { return partial_trace(s, side); }

// rho_side (x) 1/d_other laid out in the original tensor order.
QState with_maximally_mixed_partner(const QState& s, Subsystem side) {
  const Dims& dims = s.dims();
  const QState m = marginal(s, side);
  const int dother = dims.of(other(side));
  const QState mixed = maximally_mixed(Dims(dother, 1));
  return side == Subsystem::A ? tensor(m, mixed, dims) : tensor(mixed, m, dims);
}

}  // namespace

double QuantifierReport::check(const std::string& key) const {
  for (const auto& [k, v] : checks)
    if (k == key) return v;
  throw std::out_of_range("no check named " + key);
}

Nats clamp_nonnegative(Nats v) {
  if (v.value < 0.0 && v.value >= -tol::kClamp) return Nats(0.0);
  return v;
}

// ---- coherence -----------------------------------------------------------

Nats coherence(const QState& s, const ObservableBasis& basis) {
  if (basis.dim() == s.dim()) {
    const QState flat = flatten(s);
    const ObservableBasis whole = basis.on(Subsystem::A);
    return clamp_nonnegative(information(flat) - information(phi_meas(flat, whole)));
  }
  if (s.dims().bipartite() && s.dims().of(basis.subsystem()) == basis.dim()) {
    const QState m = marginal(s, basis.subsystem());
    const ObservableBasis local = basis.on(Subsystem::A);
    return clamp_nonnegative(information(m) - information(phi_meas(m, local)));
  }
  throw Error(ErrorKind::DimensionMismatch, "coherence: basis fits neither the state nor a subsystem");
}

// ---- entanglement --------------------------------------------------------

ObservableBasis schmidt_observable(const PureState& psi) { return schmidt(psi).basis_a; }

EntanglementForms entanglement_pure_forms(const PureState& psi) {
  if (!psi.dims().bipartite()) {
    throw Error(ErrorKind::NotBipartite, "entanglement needs a bipartite pure state");
  }
  const SchmidtDecomposition sd = schmidt(psi);
  const QState rho = psi.to_state();
  const QState dephased = phi_meas(rho, sd.basis_a);
  EntanglementForms f;
  f.shannon = shannon_entropy(sd.coefficients);
  f.via_information = information(rho) - information(dephased);
  f.via_mutual_information = mutual_information(rho) - mutual_information(dephased);
  return f;
}

Nats entanglement_pure(const PureState& psi) {
  return clamp_nonnegative(entanglement_pure_forms(psi).shannon);
}

double concurrence(const QState& s) {
  if (s.dims().a() != 2 || s.dims().b() != 2) {
    throw Error(ErrorKind::WrongDimensions, "concurrence needs dims (2,2)");
  }
  CMatrix yy = CMatrix::Zero(4, 4);
  // sigma_y (x) sigma_y
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.matrix());
  const RVector w = es.eigenvalues().cwiseMax(0.0);
  const CMatrix sqrt_rho = es.eigenvectors() * w.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  // sqrt(rho) rho~ sqrt(rho) = M M^dag; singular values of M avoid the square
  // root of eigenvalue noise on rank-deficient inputs.
  const CMatrix m = sqrt_rho * yy * sqrt_rho.conjugate();
  RVector lam = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  std::sort(lam.data(), lam.data() + lam.size(), std::greater<>());
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

Nats eof_two_qubit(const QState& s) {
  const double c = std::min(1.0, concurrence(s));
  const double x = (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0;
  const double p[2] = {x, 1.0 - x};
  return shannon_entropy(p);
}

Nats eof_ensemble_upper_bound(const QState& s, int samples, std::uint64_t seed) {
  if (s.dims().a() != 2 || s.dims().b() != 2) {
    throw Error(ErrorKind::WrongDimensions, "ensemble bound needs dims (2,2)");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s.matrix());
  std::vector<CVector> weighted;  // sqrt(lambda_i) |e_i>
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-12) weighted.emplace_back(std::sqrt(l) * es.eigenvectors().col(i));
  }
  const int rank = static_cast<int>(weighted.size());
  const Dims dims = s.dims();

  auto average = [&](const CMatrix& iso) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < iso.rows(); ++j) {
      CVector psi = CVector::Zero(4);
      for (int i = 0; i < rank; ++i) psi += iso(j, i) * weighted[static_cast<std::size_t>(i)];
      const double p = psi.squaredNorm();
      if (p < 1e-15) continue;
      total += p * entanglement_pure(make_pure(dims, psi / std::sqrt(p))).value;
    }
    return total;
  };

  double best = average(CMatrix::Identity(rank, rank));  // spectral ensemble
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    // members m in {r, ..., r + 2}
    const int m = rank + k % 3;
    const CMatrix u = haar_unitary(m, rng);
    best = std::min(best, average(u.leftCols(rank)));
  }
  return Nats(best);
}

// ---- discord -------------------------------------------------------------

double DiscordForms::max_residual() const {
  return spread({mutual_loss, local_surplus, monitored_surplus, conditional_flow});
}

DiscordForms discord_basis_forms(const QState& s, const ObservableBasis& basis) {
  require_bipartite(s, "discord");
  const Subsystem side = basis.subsystem();
  const QState measured = phi_meas(s, basis);

  DiscordForms f;
  f.mutual_loss = mutual_information(s) - mutual_information(measured);

  const Nats joint_flow = information(s) - information(measured);
  const QState local = with_maximally_mixed_partner(s, side);
  f.local_surplus = joint_flow - (information(local) - information(phi_meas(local, basis)));

  const QState monitored = phi_pair_incompatible(s, other(side));
  f.monitored_surplus = joint_flow - (information(monitored) - information(phi_meas(monitored, basis)));

  f.conditional_flow =
      conditional_information(s, side) - conditional_information(measured, side);
  return f;
}

Nats discord_basis(const QState& s, const ObservableBasis& basis) {
  return clamp_nonnegative(discord_basis_forms(s, basis).mutual_loss);
}

QuantifierReport discord_oneway(const QState& s, Subsystem side, const SearchConfig& cfg,
                                std::span<const ObservableBasis> hints) {
  require_bipartite(s, "discord");
  // D_A = S(rho_A) - S(rho) + S(Phi_A rho) - S(Phi_A rho_A)
  const QState m = marginal(s, side);
  const Nats offset = vn_entropy(m) - vn_entropy(s);
  auto objective = [&](const ObservableBasis& b) {
    return (offset + vn_entropy(phi_meas(s, b)) - vn_entropy(phi_meas(m, b.on(Subsystem::A)))).value;
  };
  BasisSearchResult r =
      optimize_basis(objective, s.dims().of(side), side, Direction::Minimize, cfg, hints);
  const DiscordForms forms = discord_basis_forms(s, r.basis);

  QuantifierReport rep;
  rep.name = side == Subsystem::A ? "discord_A" : "discord_B";
  rep.value = clamp_nonnegative(Nats(r.value));
  rep.basis = r.basis;
  rep.diagnostics = r.diagnostics;
  rep.checks = {{"form_residual", forms.max_residual()},
                {"optimizer_vs_forms", std::abs(r.value - forms.mutual_loss.value)},
                {"marginal_entropy", vn_entropy(m).value}};
  return rep;
}

double SymmetricDiscordForms::max_residual() const {
  return spread({mutual_loss, one_way_sum, three_process});
}

SymmetricDiscordForms discord_symmetric_forms(const QState& s, const Context& ctx) {
  require_bipartite(s, "symmetric discord");
  const ObservableBasis a = ctx.a.on(Subsystem::A);
  const ObservableBasis b = ctx.b.on(Subsystem::B);
  const QState measured = phi_context(s, Context{a, b});

  SymmetricDiscordForms f;
  f.mutual_loss = mutual_information(s) - mutual_information(measured);
  const QState after_a = phi_meas(s, a);
  f.one_way_sum = discord_basis_forms(s, a).mutual_loss + discord_basis_forms(after_a, b).mutual_loss;

  const QState local_a = with_maximally_mixed_partner(s, Subsystem::A);
  const QState local_b = with_maximally_mixed_partner(s, Subsystem::B);
  f.three_process = (information(s) - information(measured)) -
                    (information(local_a) - information(phi_meas(local_a, a))) -
                    (information(local_b) - information(phi_meas(local_b, b)));
  return f;
}

Nats discord_symmetric_basis(const QState& s, const Context& ctx) {
  return clamp_nonnegative(discord_symmetric_forms(s, ctx).mutual_loss);
}

QuantifierReport discord_symmetric(const QState& s, const SearchConfig& cfg,
                                   std::span<const Context> hints) {
  require_bipartite(s, "symmetric discord");
  const QState ma = marginal(s, Subsystem::A);
  const QState mb = marginal(s, Subsystem::B);
  const Nats offset = vn_entropy(ma) + vn_entropy(mb) - vn_entropy(s);
  auto objective = [&](const Context& c) {
    return (offset - vn_entropy(phi_meas(ma, c.a.on(Subsystem::A))) -
            vn_entropy(phi_meas(mb, c.b.on(Subsystem::A))) + vn_entropy(phi_context(s, c)))
        .value;
  };
  ContextSearchResult r = optimize_context(objective, s.dims(), Direction::Minimize, cfg, hints);
  const SymmetricDiscordForms forms = discord_symmetric_forms(s, r.context);

  QuantifierReport rep;
  rep.name = "discord_symmetric";
  rep.value = clamp_nonnegative(Nats(r.value));
  rep.context = r.context;
  rep.diagnostics = r.diagnostics;
  rep.checks = {{"form_residual", forms.max_residual()},
                {"optimizer_vs_forms", std::abs(r.value - forms.mutual_loss.value)}};
  return rep;
}

// ---- irreality -----------------------------------------------------------

double IrrealityForms::max_residual() const {
  if (relative_entropy.is_infinite()) return std::numeric_limits<double>::infinity();
  return spread({information_loss, entropy_gap, relative_entropy, local_plus_discord});
}

IrrealityForms irreality_forms(const QState& s, const ObservableBasis& basis) {
  const QState measured = phi_meas(s, basis);
  IrrealityForms f;
  f.information_loss = information(s) - information(measured);
  f.entropy_gap = vn_entropy(measured) - vn_entropy(s);
  f.relative_entropy = qres::relative_entropy(s, measured);
  if (s.dims().bipartite()) {
    f.local_plus_discord = coherence(s, basis) + discord_basis_forms(s, basis).mutual_loss;
  } else {
    f.local_plus_discord = coherence(s, basis);
  }
  return f;
}

Nats irreality(const QState& s, const ObservableBasis& basis) {
  const QState measured = phi_meas(s, basis);
  return clamp_nonnegative(information(s) - information(measured));
}

IrrealityBound irreality_bound(const QState& s, const ObservableBasis& basis) {
  require_bipartite(s, "irreality bound");
  const QState m = marginal(s, basis.subsystem());
  std::vector<double> p(static_cast<std::size_t>(basis.dim()));
  for (int a = 0; a < basis.dim(); ++a) {
    p[static_cast<std::size_t>(a)] =
        (basis.vector(a).adjoint() * m.matrix() * basis.vector(a))(0, 0).real();
  }
  IrrealityBound out;
  out.bound = shannon_entropy(p);
  out.irreality = irreality(s, basis);
  out.pure = is_pure(s);
  out.saturated = out.bound.value - out.irreality.value <= 1e-8;
  const int dother = s.dims().of(other(basis.subsystem()));
  out.normalized_reading = out.bound + ln_dim(dother);
  out.literal_reading = static_cast<double>(dother) * out.bound;
  return out;
}

// ---- realism-based nonlocality ------------------------------------------

double RbnForms::max_residual() const {
  return spread({eta, discord_difference, information_surplus, exchanged});
}

RbnForms rbn_contextual_forms(const QState& s, const Context& ctx) {
  require_bipartite(s, "nonlocality");
  const ObservableBasis a = ctx.a.on(Subsystem::A);
  const ObservableBasis b = ctx.b.on(Subsystem::B);
  const QState after_b = phi_meas(s, b);
  const QState after_a = phi_meas(s, a);

  RbnForms f;
  f.eta = irreality_forms(s, a).entropy_gap - irreality_forms(after_b, a).entropy_gap;
  f.discord_difference =
      discord_basis_forms(s, a).mutual_loss - discord_basis_forms(after_b, a).mutual_loss;
  f.information_surplus = (information(s) - information(after_a)) -
                          (information(after_b) - information(phi_meas(after_b, a)));
  f.exchanged = (information(s) - information(after_b)) -
                (information(after_a) - information(phi_meas(after_a, b)));
  return f;
}

Nats rbn_contextual(const QState& s, const Context& ctx) {
  require_bipartite(s, "nonlocality");
  const ObservableBasis a = ctx.a.on(Subsystem::A);
  const QState after_b = phi_meas(s, ctx.b.on(Subsystem::B));
  return clamp_nonnegative(irreality(s, a) - irreality(after_b, a));
}

QuantifierReport rbn(const QState& s, const SearchConfig& cfg, std::span<const Context> hints) {
  require_bipartite(s, "nonlocality");
  const Nats s_rho = vn_entropy(s);
  // eta = S(Phi_A rho) - S(rho) - S(Phi_A Phi_B rho) + S(Phi_B rho)
  auto objective = [&](const Context& c) {
    const QState after_b = phi_meas(s, c.b);
    return (vn_entropy(phi_meas(s, c.a)) - s_rho - vn_entropy(phi_meas(after_b, c.a)) +
            vn_entropy(after_b))
        .value;
  };
  ContextSearchResult r = optimize_context(objective, s.dims(), Direction::Maximize, cfg, hints);
  const RbnForms forms = rbn_contextual_forms(s, r.context);
  const double bound = std::log(static_cast<double>(std::min(s.dims().a(), s.dims().b())));

  QuantifierReport rep;
  rep.name = "rbn";
  rep.value = clamp_nonnegative(Nats(r.value));
  rep.context = r.context;
  rep.diagnostics = r.diagnostics;
  rep.checks = {{"form_residual", forms.max_residual()},
                {"optimizer_vs_forms", std::abs(r.value - forms.eta.value)},
                {"bound", bound},
                {"bound_slack", bound - r.value}};
  return rep;
}

// ---- generic correlation -------------------------------------------------

QuantifierReport generic_correlation(const QState& s, Scope scope, const SearchConfig& cfg) {
  const bool global = scope == Scope::Global || !s.dims().bipartite();
  if (!global && scope == Scope::B && !s.dims().bipartite()) {
    throw Error(ErrorKind::NotBipartite, "scope B needs a bipartite state");
  }
  const QState target = global ? flatten(s) : s;
  const Subsystem side = scope == Scope::B && !global ? Subsystem::B : Subsystem::A;
  const int dim = global ? target.dim() : target.dims().of(side);
  const Nats s_rho = vn_entropy(target);
  auto objective = [&](const ObservableBasis& b) {
    return (vn_entropy(phi_meas(target, b)) - s_rho).value;
  };
  BasisSearchResult r = optimize_basis(objective, dim, side, Direction::Minimize, cfg);
  const Nats rel = qres::relative_entropy(target, phi_meas(target, r.basis));

  QuantifierReport rep;
  rep.name = global ? "generic_global" : (side == Subsystem::A ? "generic_A" : "generic_B");
  rep.value = clamp_nonnegative(Nats(r.value));
  rep.basis = r.basis;
  rep.diagnostics = r.diagnostics;
  rep.checks = {{"relative_entropy_at_optimum", rel.value},
                {"relative_entropy_residual", std::abs(rel.value - r.value)}};
  return rep;
}

// ---- monotonicity --------------------------------------------------------

std::string_view to_string(Resource r) {
  switch (r) {
    case Resource::Coherence: return "coherence";
    case Resource::PureEntanglement: return "entanglement";
    case Resource::OneWayDiscord: return "discord";
    case Resource::SymmetricDiscord: return "discord-sym";
    case Resource::Irreality: return "irreality";
    case Resource::Rbn: return "rbn";
  }
  return "unknown";
}


Pairing paired_monitoring(const QState& s, Resource resource,
                          const std::optional<ObservableBasis>& basis, const SearchConfig& cfg) {
  switch (resource) {
    case Resource::Coherence:
    case Resource::Irreality:
      if (!basis) throw Error(ErrorKind::UnknownPairing, "this monitoring needs a basis");
      return Pairing{resource, MeasureDestroyer{*basis}, std::nullopt};
    case Resource::PureEntanglement: {
      if (!is_pure(s)) throw Error(ErrorKind::NotPure, "pure-state entanglement monitoring");
      return Pairing{resource, MeasureDestroyer{schmidt_observable(to_pure(s))}, std::nullopt};
    }
    case Resource::OneWayDiscord: {
      const QuantifierReport r = discord_oneway(s, Subsystem::A, cfg);
      return Pairing{resource, MeasureDestroyer{*r.basis}, std::nullopt};
    }
    case Resource::SymmetricDiscord: {
      const QuantifierReport r = discord_symmetric(s, cfg);
      return Pairing{resource, ContextDestroyer{*r.context}, r.context};
    }
    case Resource::Rbn: {
      const QuantifierReport r = rbn(s, cfg);
      return Pairing{resource, MeasureDestroyer{r.context->a}, r.context};
    }
  }
  throw Error(ErrorKind::UnknownPairing, "unknown resource");
}

double evaluate_resource(const QState& s, const Pairing& pairing, const SearchConfig& cfg) {
  switch (pairing.resource) {
    case Resource::Coherence:
      return coherence(s, std::get<MeasureDestroyer>(pairing.destroyer).basis).value;
    case Resource::Irreality:
      return irreality(s, std::get<MeasureDestroyer>(pairing.destroyer).basis).value;
    case Resource::PureEntanglement:
      return eof_two_qubit(s).value;
    case Resource::OneWayDiscord: {
      const ObservableBasis& b = std::get<MeasureDestroyer>(pairing.destroyer).basis;
      const ObservableBasis hint[] = {b};
      return discord_oneway(s, b.subsystem(), cfg, hint).value.value;
    }
    case Resource::SymmetricDiscord: {
      const Context hint[] = {std::get<ContextDestroyer>(pairing.destroyer).context};
      return discord_symmetric(s, cfg, hint).value.value;
    }
    case Resource::Rbn: {
      std::vector<Context> hints;
      if (pairing.optimum) hints.push_back(*pairing.optimum);
      return rbn(s, cfg, hints).value.value;
    }
  }
  throw Error(ErrorKind::UnknownPairing, "unknown resource");
}

MonotonicityReport resource_monotonicity_check(const QState& s, const Pairing& pairing,
                                               std::span<const double> eps_grid,
                                               const SearchConfig& cfg) {
  const bool measure = std::holds_alternative<MeasureDestroyer>(pairing.destroyer);
  const bool context = std::holds_alternative<ContextDestroyer>(pairing.destroyer);
  const bool ok = pairing.resource == Resource::SymmetricDiscord ? context : measure;
  if (!ok) {
    throw Error(ErrorKind::UnknownPairing,
                std::string(to_string(pairing.resource)) + " is not paired with " +
                    describe(pairing.destroyer));
  }
  if (pairing.resource == Resource::PureEntanglement) {
    if (s.dims().a() != 2 || s.dims().b() != 2) {
      throw Error(ErrorKind::WrongDimensions, "entanglement monitoring is evaluated on two qubits");
    }
    if (!is_pure(s)) throw Error(ErrorKind::NotPure, "entanglement monitoring needs a pure state");
  }

  MonotonicityReport rep;
  rep.resource = pairing.resource;
  rep.destroyer = describe(pairing.destroyer);
  const StateMap destroy = as_map(pairing.destroyer);
  for (double e : eps_grid) {
    const QState monitored = monitoring(s, destroy, MonitoringStrength(e));
    rep.eps.push_back(e);
    rep.values.push_back(evaluate_resource(monitored, pairing, cfg));
  }
  for (std::size_t k = 1; k < rep.values.size(); ++k) {
    rep.max_increase = std::max(rep.max_increase, rep.values[k] - rep.values[k - 1]);
  }
  rep.final_value = rep.values.empty() ? 0.0 : rep.values.back();
  const bool ends_at_one = !rep.eps.empty() && rep.eps.back() == 1.0;
  rep.passed = rep.max_increase <= kMonotonicityTol &&
               (!ends_at_one || rep.final_value <= kMonotonicityTol);
  return rep;
}

}  // namespace qres
