#pragma once

// Fixed total-excitation sector of the two-cavity system: bare basis,
// free Hamiltonian, photon hopping, cavity swap and measurable observables.

#include "kjc/jc_core.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kjc {

enum class Atom { g, e };

struct BareState {
    Atom atom1 = Atom::g;
    int photons1 = 0;
    Atom atom2 = Atom::g;
    int photons2 = 0;

    int excitations1() const { return photons1 + (atom1 == Atom::e ? 1 : 0); }
    int excitations2() const { return photons2 + (atom2 == Atom::e ? 1 : 0); }
    int excitations() const { return excitations1() + excitations2(); }

    // Same state with the cavity labels exchanged.
    BareState swapped() const { return {atom2, photons2, atom1, photons1}; }

    friend bool operator==(const BareState&, const BareState&) = default;
};

// Ket label like "g2;g0".
std::string to_string(const BareState& s);

// Ordered basis of all bare states with L total excitations. Order: l1
// descending, then atom1 g before e, then atom2 g before e.
class SectorBasis {
public:
    explicit SectorBasis(int total_excitations);

    int total_excitations() const { return L_; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(states_.size()); }
    const std::vector<BareState>& states() const { return states_; }
    const BareState& operator[](Eigen::Index i) const { return states_[static_cast<std::size_t>(i)]; }

    std::optional<Eigen::Index> index_of(const BareState& s) const;

    // Unit vector on bare state s. Throws if s is outside the sector.
    CVector ket(const BareState& s) const;

private:
    int L_;
    std::vector<BareState> states_;
};

SectorBasis build_basis(int total_excitations);

// H^JC_1 + H^JC_2 in the bare basis; each cavity uses jc_block_hamiltonian.
CMatrix build_h0(const SectorBasis& basis, const SystemParams& params);

// a1^dag a2 + a2^dag a1 with bosonic factors; multiply by kappa*tau for K'.
CMatrix build_hopping(const SectorBasis& basis);

// Permutation exchanging the cavity labels.
CMatrix swap_matrix(const SectorBasis& basis);

// Orthonormal columns spanning the swap-even and swap-odd subspaces. Every
// operator that commutes with the swap is block diagonal in [even | odd].
struct ParitySplit {
    CMatrix even;
    CMatrix odd;
};
ParitySplit parity_split(const SectorBasis& basis);

enum class Observable {
    n1,          // a1^dag a1
    n2,          // a2^dag a2
    sz1_pop,     // (sigma_z1 + 1) / 2
    sz2_pop,     // (sigma_z2 + 1) / 2
    szsz,        // sigma_z1 sigma_z2
    excitations1,// n1 + (sigma_z1 + 1) / 2
    proj_psi2,   // projector on {l1 = L, l2 = 0} + {l1 = 0, l2 = L}
};

// Throws InvalidInput for an unknown name.
Observable parse_observable(std::string_view name);
std::string_view observable_name(Observable o);

// All observables above are diagonal in the bare basis.
CMatrix observable_matrix(Observable o, const SectorBasis& basis);

}  // namespace kjc
