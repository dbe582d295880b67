#include "doctest.h"
#include "helpers.hpp"
#include "../oracles/bloch_oracle.hpp"

using namespace qres;
using namespace qres::test;

TEST_SUITE("optimize") {
  TEST_CASE("qubit basis parameterization") {
    const ObservableBasis z = qubit_basis(0.0, 0.0);
    CHECK(z.projector_distance(computational_basis(2)) <= 1e-15);
    const ObservableBasis x = qubit_basis(std::acos(-1.0) / 2.0, 0.0);
    CHECK(x.projector_distance(fourier_basis(2)) <= 1e-12);
    const auto [t, p] = qubit_angles(qubit_basis(0.7, 1.3));
    CHECK(t == doctest::Approx(0.7));
    CHECK(p == doctest::Approx(1.3));
  }

  TEST_CASE("generator unitaries are unitary") {
    Rng rng(1);
    std::normal_distribution<double> g;
    for (int n : {2, 3, 4}) {
      std::vector<double> params(static_cast<std::size_t>(n * n));
      for (double& v : params) v = g(rng);
      const CMatrix u = generator_unitary(params, n);
      CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(n, n)) <= 1e-12);
    }
  }

  TEST_CASE("coherence of |0><0| is minimized by the Z basis") {
    const QState zero = diag_state(Dims(2, 1), {1, 0});
    auto objective = [&](const ObservableBasis& b) { return coherence(zero, b).value; };
    const BasisSearchResult r = optimize_basis(objective, 2, Subsystem::A, Direction::Minimize, {});
    CHECK(r.value <= 1e-10);
    CHECK(r.basis.projector_distance(computational_basis(2)) <= 1e-4);
  }

  TEST_CASE("discord of a Bell state has a flat landscape") {
    const QState b = bell();
    auto objective = [&](const ObservableBasis& x) { return discord_basis(b, x).value; };
    const BasisSearchResult r = optimize_basis(objective, 2, Subsystem::A, Direction::Minimize, {});
    CHECK(r.value == doctest::Approx(kLn2).epsilon(1e-10));
    CHECK(r.diagnostics.flat);
    CHECK(brute_force_grid(objective, 2, Subsystem::A, Direction::Minimize, GridResolution{31, 61}) ==
          doctest::Approx(kLn2).epsilon(1e-10));
  }

  TEST_CASE("irreality of |+> is maximized by the Z basis") {
    const QState p = plus_state();
    auto objective = [&](const ObservableBasis& x) { return irreality(p, x).value; };
    const BasisSearchResult r = optimize_basis(objective, 2, Subsystem::A, Direction::Maximize, {});
    CHECK(r.value == doctest::Approx(kLn2).epsilon(1e-8));
    CHECK(r.basis.projector_distance(computational_basis(2)) <= 1e-3);
  }

  TEST_CASE("context searches") {
    Rng rng(2);
    const QState prod = tensor(random_state(Dims(2, 1), rng), random_state(Dims(2, 1), rng));
    auto eta_prod = [&](const Context& c) { return rbn_contextual(prod, c).value; };
    const ContextSearchResult p = optimize_context(eta_prod, Dims(2, 2), Direction::Maximize, {});
    CHECK(std::abs(p.value) <= 1e-10);
    CHECK(p.diagnostics.flat);

    const QState b = bell();
    auto eta_bell = [&](const Context& c) { return rbn_contextual(b, c).value; };
    const ContextSearchResult r = optimize_context(eta_bell, Dims(2, 2), Direction::Maximize, {});
    CHECK(std::abs(r.value - kLn2) <= 1e-6);

    const QState cc = classical_correlated();
    auto dsym = [&](const Context& c) { return discord_symmetric_basis(cc, c).value; };
    const ContextSearchResult d = optimize_context(dsym, Dims(2, 2), Direction::Minimize, {});
    CHECK(d.value <= 1e-10);
    CHECK(d.context.a.projector_distance(computational_basis(2)) <= 1e-3);
    CHECK(d.context.b.projector_distance(computational_basis(2)) <= 1e-3);
  }

  TEST_CASE("brute-force grid") {
    Rng rng(3);
    const QState prod = tensor(random_state(Dims(2, 1), rng), random_state(Dims(2, 1), rng));
    auto eta = [&](const Context& c) { return rbn_contextual(prod, c).value; };
    CHECK(std::abs(brute_force_grid(eta, Dims(2, 2), Direction::Maximize, GridResolution{5, 9})) <= 1e-12);

    const QState b = bell();
    const oracle::TwoQubit o(b);
    auto da = [&](const ObservableBasis& x) { return o.discord_a(oracle::bloch_direction(x)); };
    CHECK(std::abs(brute_force_grid(da, 2, Subsystem::A, Direction::Minimize, GridResolution{721, 1441}) - kLn2) <= 1e-6);

    auto any = [](const ObservableBasis&) { return 0.0; };
    CHECK_THROWS_AS(brute_force_grid(any, 3, Subsystem::A, Direction::Minimize, GridResolution{5, 5}), Error);
    auto anyc = [](const Context&) { return 0.0; };
    CHECK_THROWS_AS(brute_force_grid(anyc, Dims(2, 3), Direction::Minimize, GridResolution{5, 5}), Error);
  }

  TEST_CASE("optimizer agrees with the dense grid on random two-qubit states") {
    Rng rng(4);
    for (int k = 0; k < 20; ++k) {
      const QState s = random_state(Dims(2, 2), rng);
      const oracle::TwoQubit o(s);
      auto fast = [&](const ObservableBasis& x) { return o.discord_a(oracle::bloch_direction(x)); };
      auto lib = [&](const ObservableBasis& x) { return discord_basis(s, x).value; };
      const double grid = brute_force_grid(fast, 2, Subsystem::A, Direction::Minimize, GridResolution{361, 721});
      const double best = optimize_basis(lib, 2, Subsystem::A, Direction::Minimize, {}).value;
      CHECK(std::abs(best - grid) <= 1e-4);
      CHECK(best <= grid + 1e-12);
    }
  }

  TEST_CASE("determinism and monotone acceptance") {
    Rng rng(5);
    const QState s = random_state(Dims(2, 2), rng);
    auto objective = [&](const ObservableBasis& x) { return discord_basis(s, x).value; };
    SearchConfig cfg;
    cfg.seed = 99;
    const BasisSearchResult a = optimize_basis(objective, 2, Subsystem::A, Direction::Minimize, cfg);
    const BasisSearchResult b = optimize_basis(objective, 2, Subsystem::A, Direction::Minimize, cfg);
    CHECK(a.value == b.value);
    CHECK(a.basis.unitary() == b.basis.unitary());
    CHECK(a.value <= a.diagnostics.grid_best);
    CHECK(a.value <= brute_force_grid(objective, 2, Subsystem::A, Direction::Minimize,
                                      GridResolution{cfg.grid_theta, cfg.grid_phi}));

    auto max_obj = [&](const ObservableBasis& x) { return irreality(s, x).value; };
    const BasisSearchResult m = optimize_basis(max_obj, 2, Subsystem::A, Direction::Maximize, cfg);
    CHECK(m.value >= m.diagnostics.grid_best);
    CHECK(m.value >= brute_force_grid(max_obj, 2, Subsystem::A, Direction::Maximize,
                                      GridResolution{cfg.grid_theta, cfg.grid_phi}));
  }

  TEST_CASE("qudit searches are deterministic and beat the anchors") {
    Rng rng(6);
    const QState s = random_state(Dims(3, 2), rng);
    auto objective = [&](const ObservableBasis& x) { return discord_basis(s, x).value; };
    SearchConfig cfg;
    cfg.random_restarts = 4;
    const BasisSearchResult a = optimize_basis(objective, 3, Subsystem::A, Direction::Minimize, cfg);
    const BasisSearchResult b = optimize_basis(objective, 3, Subsystem::A, Direction::Minimize, cfg);
    CHECK(a.value == b.value);
    CHECK(a.value <= objective(computational_basis(3)) + 1e-12);
    CHECK(a.value <= objective(fourier_basis(3)) + 1e-12);
    CHECK(a.value <= vn_entropy(partial_trace(s, Subsystem::A)).value + 1e-8);

    auto eta = [&](const Context& c) { return rbn_contextual(s, c).value; };
    const ContextSearchResult c = optimize_context(eta, s.dims(), Direction::Maximize, cfg);
    CHECK(c.value <= std::log(2.0) + 1e-9);
    CHECK(c.value >= eta(Context{computational_basis(3, Subsystem::A), computational_basis(2, Subsystem::B)}) - 1e-12);
  }

  TEST_CASE("objectives are invariant under re-phasing the basis vectors") {
    Rng rng(7);
    const QState s = random_state(Dims(2, 2), rng);
    for (int k = 0; k < 20; ++k) {
      const ObservableBasis b = random_basis(2, Subsystem::A, rng);
      CMatrix u = b.unitary();
      for (Eigen::Index j = 0; j < 2; ++j) u.col(j) *= std::polar(1.0, std::uniform_real_distribution<double>(0, 6.28)(rng));
      const ObservableBasis rephased(u, Subsystem::A);
      CHECK(std::abs(discord_basis(s, b).value - discord_basis(s, rephased).value) <= 1e-10);
      CHECK(std::abs(irreality(s, b).value - irreality(s, rephased).value) <= 1e-10);
    }
  }
}
