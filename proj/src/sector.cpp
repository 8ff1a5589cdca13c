#include "kjc/sector.hpp"

#include <cmath>
#include <sstream>

namespace kjc {

std::string to_string(const BareState& s) {
    std::ostringstream os;
    os << (s.atom1 == Atom::g ? 'g' : 'e') << s.photons1 << ';' << (s.atom2 == Atom::g ? 'g' : 'e') << s.photons2;
    return os.str();
}

namespace {

// Bare kets of one cavity holding l excitations, g before e.
std::vector<std::pair<Atom, int>> cavity_states(int l) {
    if (l == 0) return {{Atom::g, 0}};
    return {{Atom::g, l}, {Atom::e, l - 1}};
}

}  // namespace

SectorBasis::SectorBasis(int total_excitations) : L_(total_excitations) {
    if (total_excitations < 1) throw InvalidInput("SectorBasis: total excitation number L must be >= 1");
    for (int l1 = L_; l1 >= 0; --l1) {
        for (const auto& [a1, p1] : cavity_states(l1)) {
            for (const auto& [a2, p2] : cavity_states(L_ - l1)) {
                states_.push_back({a1, p1, a2, p2});
            }
        }
    }
}

std::optional<Eigen::Index> SectorBasis::index_of(const BareState& s) const {
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i] == s) return static_cast<Eigen::Index>(i);
    }
    return std::nullopt;
}

CVector SectorBasis::ket(const BareState& s) const {
    const auto idx = index_of(s);
    if (!idx) throw InvalidInput("SectorBasis::ket: state " + to_string(s) + " is not in the sector");
    CVector v = CVector::Zero(dim());
    v(*idx) = 1.0;
    return v;
}

SectorBasis build_basis(int total_excitations) { return SectorBasis(total_excitations); }

CMatrix build_h0(const SectorBasis& basis, const SystemParams& params) {
    const auto d = basis.dim();
    CMatrix h = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const BareState& s = basis[i];
        h(i, i) = params.delta * ((s.atom1 == Atom::e ? 1 : 0) + (s.atom2 == Atom::e ? 1 : 0));
        // |g,l> -> |e,l-1> in either cavity, amplitude beta sqrt(l).
        if (s.atom1 == Atom::g && s.photons1 >= 1) {
            const auto j = *basis.index_of({Atom::e, s.photons1 - 1, s.atom2, s.photons2});
            h(j, i) = h(i, j) = params.beta * std::sqrt(static_cast<double>(s.photons1));
        }
        if (s.atom2 == Atom::g && s.photons2 >= 1) {
            const auto j = *basis.index_of({s.atom1, s.photons1, Atom::e, s.photons2 - 1});
            h(j, i) = h(i, j) = params.beta * std::sqrt(static_cast<double>(s.photons2));
        }
    }
    return h;
}

CMatrix build_hopping(const SectorBasis& basis) {
    const auto d = basis.dim();
    CMatrix k = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const BareState& s = basis[i];
        if (s.photons2 < 1) continue;
        // a1^dag a2 |p1, p2> = sqrt((p1 + 1) p2) |p1 + 1, p2 - 1>; the Hermitian
        // conjugate supplies a2^dag a1.
        const auto j = *basis.index_of({s.atom1, s.photons1 + 1, s.atom2, s.photons2 - 1});
        const double amp = std::sqrt(static_cast<double>((s.photons1 + 1) * s.photons2));
        k(j, i) += amp;
        k(i, j) += amp;
    }
    return k;
}

CMatrix swap_matrix(const SectorBasis& basis) {
    const auto d = basis.dim();
    CMatrix p = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) p(*basis.index_of(basis[i].swapped()), i) = 1.0;
    return p;
}

ParitySplit parity_split(const SectorBasis& basis) {
    const auto d = basis.dim();
    std::vector<CVector> even, odd;
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto j = *basis.index_of(basis[i].swapped());
        CVector v = CVector::Zero(d);
        if (j == i) {
            v(i) = 1.0;
            even.push_back(v);
        } else if (i < j) {
            v(i) = r;
            v(j) = r;
            even.push_back(v);
            v(j) = -r;
            odd.push_back(v);
        }
    }
    ParitySplit out{CMatrix(d, static_cast<Eigen::Index>(even.size())), CMatrix(d, static_cast<Eigen::Index>(odd.size()))};
    for (std::size_t c = 0; c < even.size(); ++c) out.even.col(static_cast<Eigen::Index>(c)) = even[c];
    for (std::size_t c = 0; c < odd.size(); ++c) out.odd.col(static_cast<Eigen::Index>(c)) = odd[c];
    return out;
}

Observable parse_observable(std::string_view name) {
    if (name == "n1") return Observable::n1;
    if (name == "n2") return Observable::n2;
    if (name == "sz1_pop") return Observable::sz1_pop;
    if (name == "sz2_pop") return Observable::sz2_pop;
    if (name == "szsz") return Observable::szsz;
    if (name == "excitations1") return Observable::excitations1;
    if (name == "proj_psi2") return Observable::proj_psi2;
    throw InvalidInput("unknown observable '" + std::string(name) + "'");
}

std::string_view observable_name(Observable o) {
    switch (o) {
        case Observable::n1: return "n1";
        case Observable::n2: return "n2";
        case Observable::sz1_pop: return "sz1_pop";
        case Observable::sz2_pop: return "sz2_pop";
        case Observable::szsz: return "szsz";
        case Observable::excitations1: return "excitations1";
        case Observable::proj_psi2: return "proj_psi2";
    }
    return "?";
}

CMatrix observable_matrix(Observable o, const SectorBasis& basis) {
    const auto d = basis.dim();
    const int L = basis.total_excitations();
    RVector diag(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const BareState& s = basis[i];
        const double pop1 = s.atom1 == Atom::e ? 1.0 : 0.0;
        const double pop2 = s.atom2 == Atom::e ? 1.0 : 0.0;
        switch (o) {
            case Observable::n1: diag(i) = s.photons1; break;
            case Observable::n2: diag(i) = s.photons2; break;
            case Observable::sz1_pop: diag(i) = pop1; break;
            case Observable::sz2_pop: diag(i) = pop2; break;
            case Observable::szsz: diag(i) = (2 * pop1 - 1) * (2 * pop2 - 1); break;
            case Observable::excitations1: diag(i) = s.excitations1(); break;
            case Observable::proj_psi2:
                diag(i) = (s.excitations1() == L || s.excitations2() == L) ? 1.0 : 0.0;
                break;
        }
    }
    return diag.cast<std::complex<double>>().asDiagonal();
}

}  // namespace kjc
