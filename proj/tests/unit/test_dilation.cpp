#include "doctest.h"
#include "helpers.hpp"
#include "qres/dilation.hpp"

using namespace qres;
using namespace qres::test;

TEST_SUITE("dilation") {
  TEST_CASE("identity channel dilates to the identity") {
    const Dilation d = dilate(identity_channel(Dims(2, 1)), Dims(2, 1));
    CHECK(d.d_x == 1);
    CHECK(max_abs(d.u - CMatrix::Identity(2, 2)) <= 1e-15);
  }

  TEST_CASE("full Z dephasing of a qubit") {
    const Dims dims(2, 1);
    const Channel ch = measurement_channel(computational_basis(2), dims);
    const Dilation d = dilate(ch, dims);
    CHECK(d.d_x == 2);
    CHECK(d.unitarity_residual() <= 1e-10);
    Rng rng(1);
    for (int k = 0; k < 50; ++k) {
      const QState s = random_state(dims, rng);
      const CMatrix reduced = partial_trace_contraction(d.evolve(s), Dims(2, 2), Subsystem::A);
      CHECK(max_abs(reduced - phi_meas(s, computational_basis(2)).matrix()) <= 1e-11);
    }
  }

  TEST_CASE("partial monitoring with a Z basis") {
    const Dims dims(2, 1);
    const Channel ch = monitoring_kraus(computational_basis(2), MonitoringStrength(0.4), dims);
    const Dilation d = dilate(ch, dims);
    CHECK(d.d_x == 3);
    Rng rng(2);
    const StateMap z = as_map(MeasureDestroyer{computational_basis(2)});
    for (int k = 0; k < 50; ++k) {
      const QState s = random_state(dims, rng);
      const CMatrix reduced = partial_trace_contraction(d.evolve(s), Dims(2, 3), Subsystem::A);
      CHECK(max_abs(reduced - monitoring(s, z, MonitoringStrength(0.4)).matrix()) <= 1e-11);
    }
  }

  TEST_CASE("dilating a non trace preserving family fails") {
    CHECK_THROWS_AS(Channel({CMatrix::Identity(2, 2) * 0.9}, Dims(2, 1), Dims(2, 1), "lossy"), Error);
  }

  TEST_CASE("flow ledger examples") {
    Rng rng(3);
    const QState r = random_state(Dims(2, 2), rng);
    const FlowLedger zero = flow_ledger(r, IncDestroyer{}, MonitoringStrength(0.0));
    CHECK(std::abs(zero.delta_i_cond.value) <= 1e-10);
    CHECK(std::abs(zero.i_final.value - zero.i_initial.value) <= 1e-10);

    const FlowLedger inc = flow_ledger(bell(), IncDestroyer{}, MonitoringStrength(1.0));
    CHECK(std::abs(inc.i_final.value) <= 1e-10);
    CHECK(std::abs(inc.delta_i_cond.value - 2 * kLn2) <= 1e-10);
    CHECK(inc.residual.value <= 1e-10);

    const QState q = random_state(Dims(2, 1), rng);
    const FlowLedger z = flow_ledger(q, MeasureDestroyer{computational_basis(2)}, MonitoringStrength(0.5));
    CHECK(z.residual.value <= 1e-10);
  }

  TEST_CASE("ledger invariants on random monitorings") {
    Rng rng(4);
    for (int k = 0; k < 100; ++k) {
      const Dims dims = k % 2 ? Dims(2, 2) : Dims(2, 3);
      const QState s = random_state(dims, rng);
      const ObservableBasis b = k % 3 ? random_basis(2, Subsystem::A, rng) : random_basis(dims.b(), Subsystem::B, rng);
      const MonitoringStrength eps(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
      const FlowLedger f = flow_ledger(s, MeasureDestroyer{b}, eps);
      CHECK(f.residual.value <= 1e-10);
      CHECK(f.reduction_error <= 1e-10);
      CHECK(std::abs(f.delta_i_cond.value - (f.delta_i_x + f.delta_i_xs_mutual).value) <= 1e-10);
      CHECK(f.delta_i_cond.value >= -1e-10);

      const Dilation d = dilate(monitoring_kraus(b, eps, dims), dims);
      CHECK(d.unitarity_residual() <= 1e-10);
      CMatrix ancilla = CMatrix::Zero(d.d_x, d.d_x);
      ancilla(d.x0, d.x0) = 1.0;
      const Dims joint(dims.total(), d.d_x);
      const double before = information(QState::unchecked(joint, kron(s.matrix(), ancilla))).value;
      const double after = information(QState::unchecked(joint, d.evolve(s))).value;
      CHECK(std::abs(before - after) <= 1e-10);
      CHECK(before == doctest::Approx(information(s).value + std::log(d.d_x)).epsilon(1e-10));
    }
  }

  TEST_CASE("dilation is deterministic") {
    const Dims dims(2, 2);
    const Channel ch = monitoring_kraus(inc_channel(dims), MonitoringStrength(0.7));
    CHECK(dilate(ch, dims).u == dilate(ch, dims).u);
  }

  TEST_CASE("total information decomposition") {
    Rng rng(5);
    const QState pp = tensor(random_pure(Dims(2, 1), rng).to_state(), random_pure(Dims(3, 1), rng).to_state());
    const InformationParcels a = total_information_decomposition(pp);
    CHECK(std::abs(a.i_mutual.value) <= 1e-12);
    CHECK(std::abs((a.i_s + a.i_x + a.i_mutual).value - a.i_total.value) <= 1e-12);

    const Dims dims(2, 1);
    const Dilation d = dilate(measurement_channel(computational_basis(2), dims), dims);
    const QState joint = make_state(Dims(2, 2), d.evolve(plus_state()));
    const InformationParcels b = total_information_decomposition(joint);
    CHECK(b.i_total.value == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(std::abs((b.i_s + b.i_x + b.i_mutual).value - std::log(4.0)) <= 1e-11);

    const QState r = random_state(Dims(3, 2), rng);
    const InformationParcels c = total_information_decomposition(r);
    CHECK(std::abs((c.i_s + c.i_x + c.i_mutual).value - information(r).value) <= 1e-11);
    CHECK_THROWS_AS(total_information_decomposition(maximally_mixed(Dims(4, 1))), Error);
  }
}
