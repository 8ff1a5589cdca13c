#include "kjc/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

using namespace kjc;

namespace {

SweepGrid small_grid() {
    SweepGrid g;
    g.kappa_tau_axis = {0.0, 0.1, 0.6};
    g.beta_T_axis = {0.5, 1.2, 3.0, 6.2};
    g.n_kicks = 60;
    return g;
}

bool bit_identical(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double x = a.data()[i];
        const double y = b.data()[i];
        if (std::isnan(x) != std::isnan(y)) return false;
        if (!std::isnan(x) && std::memcmp(&x, &y, sizeof x) != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("linspace endpoints and spacing") {
    const auto v = linspace(0.0, 1.0, 5);
    REQUIRE(v.size() == 5);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 1.0);
    CHECK(v[2] == 0.5);
    CHECK(linspace(2.0, 9.0, 1) == std::vector<double>{2.0});
    CHECK_THROWS_AS(linspace(0.0, 1.0, 0), InvalidInput);
}

TEST_CASE("SweepGrid::validate rejects bad grids") {
    SweepGrid g = small_grid();
    CHECK_NOTHROW(g.validate());
    g.beta_T_axis = {};
    CHECK_THROWS_AS(g.validate(), InvalidInput);
    g = small_grid();
    g.kappa_tau_axis.push_back(-0.1);
    CHECK_THROWS_AS(g.validate(), InvalidInput);
    g = small_grid();
    g.beta_T_axis[0] = 0.0;
    CHECK_THROWS_AS(g.validate(), InvalidInput);
    g = small_grid();
    g.kick_sign = 2;
    CHECK_THROWS_AS(g.validate(), InvalidInput);
    g = small_grid();
    g.L = 0;
    CHECK_THROWS_AS(run_sweep(g, [](const SystemParams&, const SweepGrid&) { return CellOutcome{0.0, CellStatus::ok}; }),
                    InvalidInput);
}

TEST_CASE("sweep_quantum_participation: kappa_tau = 0 row is 1/d") {
    const auto res = sweep_quantum_participation(small_grid());
    REQUIRE(res.values.rows() == 3);
    REQUIRE(res.values.cols() == 4);
    for (Eigen::Index j = 0; j < 4; ++j) {
        CHECK(std::abs(res.values(0, j) - 0.125) < 1e-12);
        CHECK(res.status_at(0, static_cast<std::size_t>(j)) == CellStatus::ok);
    }
    for (Eigen::Index i = 0; i < res.values.size(); ++i) {
        CHECK(res.values.data()[i] >= 0.125 - 1e-12);
        CHECK(res.values.data()[i] <= 1.0);
    }
}

TEST_CASE("sweep_classical_localization: no transport without a kick") {
    const auto res = sweep_classical_localization(small_grid());
    for (Eigen::Index j = 0; j < 4; ++j) CHECK(res.values(0, j) == doctest::Approx(2.0).epsilon(1e-10));
    for (Eigen::Index i = 0; i < res.values.size(); ++i) CHECK(res.values.data()[i] <= 2.0 + 1e-9);
}

TEST_CASE("run_sweep: deterministic and independent of thread count") {
    const auto g = small_grid();
    const auto a = sweep_quantum_participation(g, 1);
    const auto b = sweep_quantum_participation(g, 1);
    const auto c = sweep_quantum_participation(g, 4);
    CHECK(bit_identical(a.values, b.values));
    CHECK(bit_identical(a.values, c.values));

    const auto ca = sweep_classical_localization(g, 1);
    const auto cb = sweep_classical_localization(g, 3);
    CHECK(bit_identical(ca.values, cb.values));
    CHECK(ca.status == cb.status);
}

TEST_CASE("run_sweep: failing cells become NaN without touching neighbours") {
    const auto g = small_grid();
    const auto res = run_sweep(
        g,
        [](const SystemParams& p, const SweepGrid&) -> CellOutcome {
            if (p.kappa_tau == 0.1 && p.beta_T() == 1.2) throw std::runtime_error("boom");
            if (p.kappa_tau == 0.6 && p.beta_T() == 3.0) throw NumericalAbort("diverged");
            return {p.kappa_tau + p.beta_T(), CellStatus::ok};
        },
        2);
    CHECK(std::isnan(res.values(1, 1)));
    CHECK(res.status_at(1, 1) == CellStatus::failed);
    CHECK(std::isnan(res.values(2, 2)));
    CHECK(res.status_at(2, 2) == CellStatus::integration_abort);
    CHECK(res.values(1, 2) == doctest::Approx(3.1));
    CHECK(res.values(0, 0) == doctest::Approx(0.5));
    CHECK(cell_status_name(CellStatus::integration_abort) == "integration-abort");
}

TEST_CASE("sweep_observables_vs_kick: Haar references and determinism") {
    const SectorBasis b(2);
    const CVector psi0 = b.ket({Atom::g, 2, Atom::g, 0});
    const auto p = SystemParams::dimensionless(1.2, 0.0);
    const std::vector<double> axis = {0.0, 0.5, 2.0};
    const auto rows = sweep_observables_vs_kick(axis, p, 2, psi0, 300, 50, 1);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].haar_n1 == doctest::Approx(0.625));
    CHECK(rows[0].haar_sz1_pop == doctest::Approx(0.375));
    CHECK(rows[0].haar_szsz == doctest::Approx(0.0));
    CHECK(rows[0].mean_participation == doctest::Approx(0.125));
    // Unkicked: each cavity keeps its excitations, n1 + sz1_pop = 2.
    CHECK(rows[0].n1 + rows[0].sz1_pop == doctest::Approx(2.0).epsilon(1e-12));

    const auto again = sweep_observables_vs_kick(axis, p, 2, psi0, 300, 50, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(rows[k].n1 == again[k].n1);
        CHECK(rows[k].szsz == again[k].szsz);
    }
    CHECK_THROWS_AS(sweep_observables_vs_kick(axis, p, 2, psi0, 100, 100, 1), InvalidInput);
    CHECK_THROWS_AS(sweep_observables_vs_kick(axis, p, 3, psi0, 300, 50, 1), InvalidInput);
}
