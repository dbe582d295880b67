#include "qres_cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qres/dilation.hpp"
#include "qres/error.hpp"
#include "qres/quantifiers.hpp"
#include "qres/sampling.hpp"

namespace qres::cli {

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Accumulates the worst violation of one property over its samples.
class Property {
 public:
  Property(VerifySummary& out, std::string suite, std::string name, double tol)
      : out_(out), slot_(out.results.size()), tol_(tol) {
    out_.results.push_back(PropertyResult{std::move(suite), std::move(name), 0, 0.0, tol, false});
  }
  ~Property() {
    PropertyResult& r = out_.results[slot_];
    r.samples = samples_;
    r.worst = worst_;
    r.passed = !failed_ && worst_ <= tol_;
  }
  void observe(double violation) {
    ++samples_;
    if (std::isnan(violation)) failed_ = true;
    else worst_ = std::max(worst_, violation);
  }

 private:
  VerifySummary& out_;
  std::size_t slot_;
  double tol_;
  int samples_ = 0;
  double worst_ = 0.0;
  bool failed_ = false;
};

// Independent stream per property so suites can run alone or together.
Rng stream(std::uint64_t seed, std::uint64_t property) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(property)};
  return Rng(seq);
}

const Dims kQubits(2, 2);

Dims pick_dims(Rng& rng, std::initializer_list<Dims> options) {
  std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
  return *(options.begin() + static_cast<std::ptrdiff_t>(pick(rng)));
}

ObservableBasis random_side_basis(const Dims& dims, Rng& rng) {
  const Subsystem side = std::uniform_int_distribution<int>(0, 1)(rng) ? Subsystem::B : Subsystem::A;
  return random_basis(dims.of(side), side, rng);
}

void suite_entropy(VerifySummary& out, int n, std::uint64_t seed) {
  const std::string s = "entropy";
  {
    Property trace(out, s, "qstate trace and hermiticity", 1e-12);
    Property psd(out, s, "qstate min eigenvalue >= -1e-10", 0.0);
    Rng rng = stream(seed, 1);
    for (int k = 0; k < n; ++k) {
      const QState q = random_state(pick_dims(rng, {Dims(2, 1), Dims(3, 1), kQubits, Dims(2, 3)}), rng);
      trace.observe(std::max(std::abs(q.matrix().trace().real() - 1.0), hermitian_residual(q.matrix())));
      psd.observe(std::max(0.0, -hermitian_eigenvalues(q.matrix()).minCoeff() - 1e-10));
    }
  }
  {
    Property p(out, s, "partial_trace(tensor(a,b)) = a", 1e-12);
    Rng rng = stream(seed, 2);
    for (int k = 0; k < n; ++k) {
      const int da = std::uniform_int_distribution<int>(2, 4)(rng);
      const int db = std::uniform_int_distribution<int>(2, 4)(rng);
      const QState a = random_state(Dims(da, 1), rng);
      const QState b = random_state(Dims(db, 1), rng);
      p.observe(max_abs(partial_trace(tensor(a, b), Subsystem::A).matrix() - a.matrix()));
    }
  }
  {
    Property p(out, s, "schmidt reconstruction fidelity", 1e-10);
    Rng rng = stream(seed, 3);
    for (int k = 0; k < n; ++k) {
      const Dims dims = pick_dims(rng, {kQubits, Dims(2, 3), Dims(3, 2), Dims(3, 3)});
      const PureState psi = random_pure(dims, rng);
      const SchmidtDecomposition sd = schmidt(psi);
      CVector rec = CVector::Zero(dims.total());
      for (std::size_t i = 0; i < sd.coefficients.size(); ++i) {
        const int j = static_cast<int>(i);
        const CVector va = sd.basis_a.vector(j);
        const CVector vb = sd.basis_b.vector(j);
        rec += std::sqrt(sd.coefficients[i]) * CVector(kron(va, vb));
      }
      p.observe(1.0 - std::abs(rec.dot(psi.vector())));
    }
  }
  {
    Property p(out, s, "fourier basis unbiased with computational", 1e-12);
    for (int d = 2; d <= 5; ++d) {
      const ObservableBasis f = fourier_basis(d);
      double worst = 0.0;
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) worst = std::max(worst, std::abs(std::norm(f.vector(j)(i)) - 1.0 / d));
      p.observe(worst);
    }
  }
  {
    Property p(out, s, "0 <= S <= ln d", 1e-12);
    Rng rng = stream(seed, 4);
    for (int d : {2, 3, 4, 6}) {
      for (int k = 0; k < n; ++k) {
        const QState q = random_state(Dims(d, 1), rng);
        const double v = vn_entropy(q).value;
        p.observe(std::max(-v, v - std::log(d)));
      }
    }
  }
  {
    Property p(out, s, "unitary invariance of S", 1e-10);
    Rng rng = stream(seed, 5);
    for (int k = 0; k < n; ++k) {
      const int d = std::uniform_int_distribution<int>(2, 6)(rng);
      const QState q = random_state(Dims(d, 1), rng);
      const CMatrix u = random_unitary(d, rng);
      const QState r = make_state(q.dims(), u * q.matrix() * u.adjoint());
      p.observe(std::abs(vn_entropy(r).value - vn_entropy(q).value));
    }
  }
  {
    Property p(out, s, "S(rho||Phi_A rho) = S(Phi_A rho) - S(rho)", 1e-10);
    Rng rng = stream(seed, 6);
    for (int k = 0; k < n; ++k) {
      const Dims dims = pick_dims(rng, {kQubits, Dims(2, 3), Dims(3, 3)});
      const QState q = random_state(dims, rng);
      const QState m = phi_meas(q, random_side_basis(dims, rng));
      p.observe(std::abs(relative_entropy(q, m).value - (vn_entropy(m) - vn_entropy(q)).value));
    }
  }
  {
    Property p(out, s, "concavity of S", 1e-12);
    Rng rng = stream(seed, 7);
    for (int k = 0; k < n; ++k) {
      const Dims dims(std::uniform_int_distribution<int>(2, 5)(rng), 1);
      const int parts = std::uniform_int_distribution<int>(2, 4)(rng);
      std::vector<double> w(static_cast<std::size_t>(parts));
      double total = 0.0;
      for (double& x : w) total += (x = std::uniform_real_distribution<double>(0.05, 1.0)(rng));
      CMatrix mix = CMatrix::Zero(dims.total(), dims.total());
      double avg = 0.0;
      for (double x : w) {
        const QState q = random_state(dims, rng, 1 + k % dims.total());
        mix += (x / total) * q.matrix();
        avg += (x / total) * vn_entropy(q).value;
      }
      p.observe(avg - vn_entropy(make_state(dims, mix)).value);
    }
  }
  {
    Property nonneg(out, s, "mutual information >= 0", 1e-10);
    Property product(out, s, "mutual information of products = 0", 1e-10);
    Property correlated(out, s, "mutual information of correlated > 0", 0.0);
    Rng rng = stream(seed, 8);
    for (int k = 0; k < n; ++k) {
      const Dims dims = pick_dims(rng, {kQubits, Dims(2, 3), Dims(3, 3)});
      const QState q = random_state(dims, rng);
      const double i = mutual_information(q).value;
      nonneg.observe(-i);
      correlated.observe(i > 1e-8 ? 0.0 : 1.0);
      const QState a = random_state(Dims(dims.a(), 1), rng);
      const QState b = random_state(Dims(dims.b(), 1), rng);
      product.observe(std::abs(mutual_information(tensor(a, b, dims)).value));
    }
  }
}

void suite_channels(VerifySummary& out, int n, std::uint64_t seed) {
  const std::string s = "channels";
  {
    Property p(out, s, "Kraus completeness", 1e-10);
    Rng rng = stream(seed, 11);
    for (int k = 0; k < n; ++k) {
      const Dims dims = pick_dims(rng, {kQubits, Dims(2, 3), Dims(3, 3)});
      const double e = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const ObservableBasis b = random_side_basis(dims, rng);
      p.observe(measurement_channel(b, dims).completeness_residual());
      p.observe(monitoring_kraus(b, MonitoringStrength(e), dims).completeness_residual());
      p.observe(inc_channel(dims).completeness_residual());
      p.observe(monitoring_kraus(as_channel(ContextDestroyer{random_context(dims, rng)}, dims), MonitoringStrength(e))
                    .completeness_residual());
    }
  }
  {
    Property p(out, s, "Phi_A idempotence", 1e-11);
    Rng rng = stream(seed, 12);
    for (int k = 0; k < n; ++k) {
      const Dims dims = pick_dims(rng, {kQubits, Dims(2, 3), Dims(3, 3)});
      const QState q = random_state(dims, rng);
      const ObservableBasis b = random_side_basis(dims, rng);
      const QState once = phi_meas(q, b);
      p.observe(max_abs(phi_meas(once, b).matrix() - once.matrix()));
    }
  }
  {
    Property p(out, s, "Phi_A Phi_B = Phi_B Phi_A", 1e-12);
    Rng rng = stream(seed, 13);
    for (int k = 0; k < n; ++k) {
      const Dims dims = pick_dims(rng, {kQubits, Dims(2, 3), Dims(3, 3)});
      const QState q = random_state(dims, rng);
      const Context c = random_context(dims, rng);
      p.observe(max_abs(phi_meas(phi_meas(q, c.a), c.b).matrix() - phi_meas(phi_meas(q, c.b), c.a).matrix()));
    }
  }
  {
    Property entropy(out, s, "S(Lambda_eps rho) >= S(rho)", 1e-12);
    Property info(out, s, "I(Lambda_eps rho) non-increasing in eps", 1e-12);
    Property inc(out, s, "Phi_inc rho = 1/d", 1e-12);
    Rng rng = stream(seed, 14);
    for (int k = 0; k < n; ++k) {
      const Dims dims = pick_dims(rng, {kQubits, Dims(2, 3), Dims(3, 3)});
      const QState q = random_state(dims, rng);
      const Nats s0 = vn_entropy(q);
      inc.observe(max_abs(phi_inc(q).matrix() - CMatrix::Identity(dims.total(), dims.total()) / dims.total()));
      const Destroyer destroyers[] = {MeasureDestroyer{random_side_basis(dims, rng)}, IncDestroyer{}};
      for (const Destroyer& d : destroyers) {
        const StateMap map = as_map(d);
        double prev = information(q).value;
        for (int step = 1; step <= 10; ++step) {
          const QState m = monitoring(q, map, MonitoringStrength(step / 10.0));
          entropy.observe(s0.value - vn_entropy(m).value);
          const double cur = information(m).value;
          info.observe(cur - prev);
          prev = cur;
        }
      }
    }
  }
}

Destroyer random_destroyer(const Dims& dims, Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return MeasureDestroyer{random_side_basis(dims, rng)};
    case 1: return ContextDestroyer{random_context(dims, rng)};
    case 2: return PairIncompatibleDestroyer{std::uniform_int_distribution<int>(0, 1)(rng) ? Subsystem::B : Subsystem::A};
    default: return IncDestroyer{};
  }
}

void suite_dilation(VerifySummary& out, int n, std::uint64_t seed) {
  const std::string s = "dilation";
  Property unitarity(out, s, "dilation unitarity", 1e-10);
  Property reduction(out, s, "Tr_X evolved = Lambda_eps rho", 1e-10);
  Property conservation(out, s, "I(rho) = I(Lambda rho) + dI_X|S", 1e-10);
  Property invariance(out, s, "I of joint state unchanged", 1e-10);
  Property flow(out, s, "dI_X|S >= 0", 1e-10);
  Rng rng = stream(seed, 21);
  for (int k = 0; k < n; ++k) {
    const Dims dims = pick_dims(rng, {kQubits, Dims(2, 3)});
    const QState q = random_state(dims, rng);
    const Destroyer d = random_destroyer(dims, rng);
    const MonitoringStrength eps(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    const FlowLedger ledger = flow_ledger(q, d, eps);
    const Dilation dil = dilate(monitoring_kraus(as_channel(d, dims), eps), dims);
    unitarity.observe(dil.unitarity_residual());
    reduction.observe(ledger.reduction_error);
    conservation.observe(ledger.residual.value);
    flow.observe(-ledger.delta_i_cond.value);
    const Dims joint(dims.total(), dil.d_x);
    CMatrix ancilla = CMatrix::Zero(dil.d_x, dil.d_x);
    ancilla(dil.x0, dil.x0) = 1.0;
    const CMatrix start = kron(q.matrix(), ancilla);
    invariance.observe(std::abs(information(QState::unchecked(joint, start)).value -
                                information(QState::unchecked(joint, dil.evolve(q))).value));
  }
}

void suite_quantifiers(VerifySummary& out, int n, std::uint64_t seed) {
  const std::string s = "quantifiers";
  const SearchConfig cfg;
  {
    Property discord(out, s, "four discord forms agree", 1e-10);
    Property irr(out, s, "J_A = C_A(rho_A) + D_A", 1e-10);
    Property irr_rel(out, s, "J_A = S(rho||Phi_A rho)", 1e-10);
    Property sym(out, s, "D_AB = D_A + D_B(Phi_A rho)", 1e-10);
    Property sym3(out, s, "D_AB three-process form", 1e-10);
    Property eta_sym(out, s, "eta symmetry under swap", 1e-10);
    Property eta_forms(out, s, "eta forms agree", 1e-10);
    Property bounds(out, s, "C_A <= ln d, J_A <= bound, eta <= ln min d", 1e-9);
    Rng rng = stream(seed, 31);
    for (int k = 0; k < n; ++k) {
      const Dims dims = pick_dims(rng, {kQubits, Dims(2, 3), Dims(3, 2), Dims(3, 3)});
      const QState q = random_state(dims, rng);
      const ObservableBasis b = random_side_basis(dims, rng);
      const ObservableBasis ba = random_basis(dims.a(), Subsystem::A, rng);
      const Context c = random_context(dims, rng);

      discord.observe(discord_basis_forms(q, b).max_residual());
      const IrrealityForms f = irreality_forms(q, ba);
      irr.observe(std::abs(f.information_loss.value - f.local_plus_discord.value));
      irr_rel.observe(std::abs(f.information_loss.value - f.relative_entropy.value));

      const SymmetricDiscordForms sf = discord_symmetric_forms(q, c);
      sym.observe(std::abs(sf.mutual_loss.value - sf.one_way_sum.value));
      sym3.observe(std::abs(sf.mutual_loss.value - sf.three_process.value));

      const RbnForms rf = rbn_contextual_forms(q, c);
      eta_forms.observe(rf.max_residual());
      const QState sw = swap_subsystems(q);
      const ObservableBasis a_sw = c.a.on(Subsystem::B);
      const double swapped = (irreality(sw, a_sw) - irreality(phi_meas(sw, c.b.on(Subsystem::A)), a_sw)).value;
      eta_sym.observe(std::abs(rf.eta.value - swapped));

      const double lnmin = std::log(std::min(dims.a(), dims.b()));
      bounds.observe(coherence(q, ba).value - std::log(dims.a()));
      bounds.observe(f.information_loss.value - irreality_bound(q, ba).bound.value);
      bounds.observe(rf.eta.value - lnmin);
    }
  }
  {
    Property forms(out, s, "pure entanglement forms agree", 1e-10);
    Property bound(out, s, "E <= ln min d", 1e-10);
    Property eof(out, s, "eof_two_qubit = E on pure states", 1e-8);
    Property saturation(out, s, "J_A = bound on pure states", 1e-8);
    Rng rng = stream(seed, 32);
    for (int k = 0; k < n; ++k) {
      const PureState psi = random_pure(kQubits, rng);
      const EntanglementForms ef = entanglement_pure_forms(psi);
      forms.observe(std::max(std::abs(ef.shannon.value - ef.via_information.value),
                             std::abs(ef.shannon.value - ef.via_mutual_information.value)));
      bound.observe(ef.shannon.value - std::log(2.0));
      eof.observe(std::abs(eof_two_qubit(psi.to_state()).value - ef.shannon.value));
      const IrrealityBound ib = irreality_bound(psi.to_state(), random_basis(2, Subsystem::A, rng));
      saturation.observe(ib.bound.value - ib.irreality.value);
    }
  }
  {
    Property pure(out, s, "optimized D_A = D_B = E on pure states", 1e-4);
    Property sat(out, s, "D_A <= S(rho_A)", 1e-8);
    Rng rng = stream(seed, 33);
    for (int k = 0; k < n; ++k) {
      const PureState psi = random_pure(kQubits, rng);
      const double e = entanglement_pure(psi).value;
      const QState rho = psi.to_state();
      pure.observe(std::abs(discord_oneway(rho, Subsystem::A, cfg).value.value - e));
      pure.observe(std::abs(discord_oneway(rho, Subsystem::B, cfg).value.value - e));
      const QState q = random_state(kQubits, rng);
      sat.observe(discord_oneway(q, Subsystem::A, cfg).value.value -
                  vn_entropy(partial_trace(q, Subsystem::A)).value);
    }
  }
  {
    Property p(out, s, "rbn(Bell) = ln 2 for any selected optimum", 1e-6);
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    const QState bell = from_pure(kQubits, v);
    Rng rng = stream(seed, 34);
    const int runs = std::max(1, std::min(n, 5));
    for (int k = 0; k < runs; ++k) {
      SearchConfig c = cfg;
      c.seed = rng();
      c.context_grid_theta = 5 + 2 * k;
      const QuantifierReport r = rbn(bell, c);
      p.observe(std::abs(rbn_contextual(bell, *r.context).value - std::log(2.0)));
      p.observe(std::abs(r.value.value - std::log(2.0)));
    }
  }
}

void suite_optimize(VerifySummary& out, int n, std::uint64_t seed) {
  const std::string s = "optimize";
  const SearchConfig cfg;
  const int runs = std::max(1, std::min(n, 10));
  {
    Property det(out, s, "determinism", 0.0);
    Property incumbent(out, s, "refinement never worsens the grid incumbent", 0.0);
    Property grid(out, s, "min <= every grid sample", 1e-12);
    Property phase(out, s, "re-phasing invariance", 1e-10);
    Rng rng = stream(seed, 41);
    for (int k = 0; k < runs; ++k) {
      const QState q = random_state(kQubits, rng);
      auto objective = [&](const ObservableBasis& b) {
        return discord_basis(q, b).value;
      };
      const BasisSearchResult r1 = optimize_basis(objective, 2, Subsystem::A, Direction::Minimize, cfg);
      const BasisSearchResult r2 = optimize_basis(objective, 2, Subsystem::A, Direction::Minimize, cfg);
      det.observe(r1.value == r2.value && r1.basis.unitary() == r2.basis.unitary() ? 0.0 : 1.0);
      incumbent.observe(r1.value - r1.diagnostics.grid_best);
      const double brute = brute_force_grid(objective, 2, Subsystem::A, Direction::Minimize,
                                            GridResolution{cfg.grid_theta, cfg.grid_phi});
      grid.observe(r1.value - brute);

      const ObservableBasis b = random_basis(2, Subsystem::A, rng);
      CMatrix u = b.unitary();
      for (Eigen::Index j = 0; j < u.cols(); ++j) {
        u.col(j) *= std::polar(1.0, std::uniform_real_distribution<double>(0.0, 6.283185307179586)(rng));
      }
      phase.observe(std::abs(objective(b) - objective(ObservableBasis(u, Subsystem::A))));

      auto eta = [&](const Context& c) { return rbn_contextual(q, c).value; };
      const ContextSearchResult c1 = optimize_context(eta, kQubits, Direction::Maximize, cfg);
      const ContextSearchResult c2 = optimize_context(eta, kQubits, Direction::Maximize, cfg);
      det.observe(c1.value == c2.value && c1.context.a.unitary() == c2.context.a.unitary() &&
                          c1.context.b.unitary() == c2.context.b.unitary()
                      ? 0.0
                      : 1.0);
      incumbent.observe(c1.diagnostics.grid_best - c1.value);
    }
  }
  {
    Property p(out, s, "optimizer agrees with dense grid (D_A)", 1e-4);
    Rng rng = stream(seed, 42);
    for (int k = 0; k < std::max(1, std::min(n, 5)); ++k) {
      const QState q = random_state(kQubits, rng);
      auto objective = [&](const ObservableBasis& b) { return discord_basis(q, b).value; };
      const double best = optimize_basis(objective, 2, Subsystem::A, Direction::Minimize, cfg).value;
      const double brute =
          brute_force_grid(objective, 2, Subsystem::A, Direction::Minimize, GridResolution{181, 361});
      p.observe(std::abs(best - brute));
    }
  }
}

}  // namespace

bool VerifySummary::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

VerifySummary run_verify(const std::string& suite, int samples, std::uint64_t seed) {
  using Runner = std::function<void(VerifySummary&, int, std::uint64_t)>;
  const std::vector<std::pair<std::string, Runner>> runners{
      {"entropy", suite_entropy},
      {"channels", suite_channels},
      {"dilation", suite_dilation},
      {"quantifiers", suite_quantifiers},
      {"optimize", suite_optimize}};
  if (samples < 1) throw Error(ErrorKind::Parse, "samples: must be positive");
  VerifySummary summary;
  bool found = false;
  for (const auto& [name, run] : runners) {
    if (suite == "all" || suite == name) {
      run(summary, samples, seed);
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::Parse, "suite: unknown suite '" + suite + "'");
  return summary;
}

}  // namespace qres::cli
