#include "kjc/sector.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace kjc;

namespace {

std::vector<BareState> brute_force_states(int L) {
    std::vector<BareState> out;
    for (Atom a1 : {Atom::g, Atom::e})
        for (int p1 = 0; p1 <= L; ++p1)
            for (Atom a2 : {Atom::g, Atom::e})
                for (int p2 = 0; p2 <= L; ++p2) {
                    const BareState s{a1, p1, a2, p2};
                    if (s.excitations() == L) out.push_back(s);
                }
    return out;
}

SystemParams resonant(double beta = 1.0) {
    SystemParams p;
    p.beta = beta;
    return p;
}

}  // namespace

TEST_CASE("build_basis: L = 1 order") {
    const SectorBasis b(1);
    REQUIRE(b.dim() == 4);
    CHECK(to_string(b[0]) == "g1;g0");
    CHECK(to_string(b[1]) == "e0;g0");
    CHECK(to_string(b[2]) == "g0;g1");
    CHECK(to_string(b[3]) == "g0;e0");
}

TEST_CASE("build_basis: dimensions match brute-force enumeration") {
    CHECK(SectorBasis(2).dim() == 8);
    CHECK(SectorBasis(3).dim() == 12);
    for (int L = 1; L <= 6; ++L) {
        const SectorBasis b(L);
        const auto brute = brute_force_states(L);
        CHECK(b.dim() == static_cast<Eigen::Index>(brute.size()));
        CHECK(b.dim() == 4 * L);
        for (const auto& s : brute) CHECK(b.index_of(s).has_value());
        for (Eigen::Index i = 0; i < b.dim(); ++i) CHECK(*b.index_of(b[i]) == i);
    }
    CHECK_THROWS_AS(SectorBasis(0), InvalidInput);
}

TEST_CASE("build_basis: canonical ordering groups the psi2 states at the ends") {
    const SectorBasis b(2);
    const std::vector<std::string> expected = {"g2;g0", "e1;g0", "g1;g1", "g1;e0", "e0;g1", "e0;e0", "g0;g2", "g0;e1"};
    for (Eigen::Index i = 0; i < 8; ++i) CHECK(to_string(b[i]) == expected[static_cast<std::size_t>(i)]);
}

TEST_CASE("build_h0: L = 2 resonant spectrum is the tensor sum of dressed energies") {
    const SectorBasis b(2);
    const CMatrix h = build_h0(b, resonant());
    CHECK(hermiticity_defect(h) == 0.0);
    const auto eig = hermitian_eig(h);
    const double r2 = std::sqrt(2.0);
    // (2,0),(0,2): +-sqrt2 each; (1,1): (+-1) + (+-1).
    const std::vector<double> expected = {-2.0, -r2, -r2, 0.0, 0.0, r2, r2, 2.0};
    for (Eigen::Index k = 0; k < 8; ++k) CHECK(eig.eigenvalues(k) == doctest::Approx(expected[k]).epsilon(1e-13));
}

TEST_CASE("build_h0: zero coupling and detuning gives the zero matrix") {
    SystemParams p = resonant();
    p.beta = 0.0;
    for (int L = 1; L <= 4; ++L) CHECK(max_abs(build_h0(SectorBasis(L), p)) == 0.0);
}

TEST_CASE("build_h0 and build_hopping match ladder operators on a truncated tensor space") {
    const oracle::TensorSpace full(3);
    for (int L = 1; L <= 3; ++L) {
        const SectorBasis b(L);
        for (double delta : {0.0, 0.7, -1.3}) {
            SystemParams p = resonant(0.8);
            p.delta = delta;
            const CMatrix jc = full.jc(p.beta, p.delta);
            CHECK(max_abs(build_h0(b, p) - full.restrict(jc, b)) < 1e-14);
            CHECK(full.leakage(jc, b) == 0.0);
        }
        const CMatrix hop = full.hopping();
        CHECK(max_abs(build_hopping(b) - full.restrict(hop, b)) < 1e-14);
        CHECK(full.leakage(hop, b) == 0.0);
    }
}

TEST_CASE("build_hopping: explicit elements") {
    const SectorBasis b1(1);
    const CMatrix k1 = build_hopping(b1);
    const auto g1g0 = *b1.index_of({Atom::g, 1, Atom::g, 0});
    const auto g0g1 = *b1.index_of({Atom::g, 0, Atom::g, 1});
    CHECK(k1(g1g0, g0g1).real() == doctest::Approx(1.0));
    CHECK(max_abs(k1.row(*b1.index_of({Atom::e, 0, Atom::g, 0}))) == 0.0);
    CHECK(max_abs(k1.row(*b1.index_of({Atom::g, 0, Atom::e, 0}))) == 0.0);

    const SectorBasis b2(2);
    const CMatrix k2 = build_hopping(b2);
    CHECK(k2(*b2.index_of({Atom::g, 1, Atom::g, 1}), *b2.index_of({Atom::g, 2, Atom::g, 0})).real() ==
          doctest::Approx(std::sqrt(2.0)));
    // Atomic excitations only: nothing to hop.
    CHECK(max_abs(k2.row(*b2.index_of({Atom::e, 0, Atom::e, 0}))) == 0.0);
    CHECK(hermiticity_defect(k2) == 0.0);
}

TEST_CASE("swap symmetry of H0 and K") {
    for (int L = 1; L <= 4; ++L) {
        const SectorBasis b(L);
        const CMatrix s = swap_matrix(b);
        CHECK(max_abs(s * s - CMatrix::Identity(b.dim(), b.dim())) == 0.0);
        SystemParams p = resonant();
        p.delta = 0.4;
        CHECK(max_abs(commutator(build_h0(b, p), s)) < 1e-15);
        CHECK(max_abs(commutator(build_hopping(b), s)) < 1e-15);
    }
}

TEST_CASE("parity_split: orthonormal, complete and swap-definite") {
    for (int L = 1; L <= 4; ++L) {
        const SectorBasis b(L);
        const ParitySplit ps = parity_split(b);
        const CMatrix s = swap_matrix(b);
        CHECK(ps.even.cols() + ps.odd.cols() == b.dim());
        CMatrix all(b.dim(), b.dim());
        all << ps.even, ps.odd;
        CHECK(unitarity_defect(all) < 1e-15);
        CHECK(max_abs(s * ps.even - ps.even) < 1e-15);
        CHECK(max_abs(s * ps.odd + ps.odd) < 1e-15);
    }
    CHECK(parity_split(SectorBasis(2)).even.cols() == 5);
}

TEST_CASE("observable_matrix: values and traces") {
    const SectorBasis b(2);
    const CVector g2g0 = b.ket({Atom::g, 2, Atom::g, 0});
    const CVector g1g1 = b.ket({Atom::g, 1, Atom::g, 1});
    const CMatrix proj = observable_matrix(Observable::proj_psi2, b);
    CHECK(g2g0.dot(proj * g2g0).real() == 1.0);
    CHECK(g1g1.dot(proj * g1g1).real() == 0.0);
    CHECK(proj.trace().real() == 4.0);
    CHECK(max_abs(proj * proj - proj) == 0.0);

    CHECK(observable_matrix(Observable::n1, b).trace().real() == 5.0);
    CHECK(observable_matrix(Observable::n2, b).trace().real() == 5.0);
    CHECK(observable_matrix(Observable::sz1_pop, b).trace().real() == 3.0);
    CHECK(observable_matrix(Observable::szsz, b).trace().real() == 0.0);

    const CMatrix ex1 = observable_matrix(Observable::excitations1, b);
    CHECK(max_abs(ex1 - observable_matrix(Observable::n1, b) - observable_matrix(Observable::sz1_pop, b)) == 0.0);

    CHECK(parse_observable("szsz") == Observable::szsz);
    CHECK_THROWS_AS(parse_observable("energy"), InvalidInput);
    CHECK_THROWS_AS(b.ket({Atom::g, 3, Atom::g, 0}), InvalidInput);
}
