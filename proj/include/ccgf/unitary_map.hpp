#pragma once

#include "ccgf/cc.hpp"

namespace ccgf {

// Pauli string with a tracked global phase (one of +-1, +-i). Letters are
// stored qubit 0 first.
struct PauliString {
    cplx phase = 1.0;
    std::string letters;

    int n_qubits() const { return (int)letters.size(); }
    PauliString adjoint() const;
    PauliString operator*(const PauliString& rhs) const;
    CMat matrix() const;
    CVec apply(const CVec& state) const;
    std::string label() const;
};

PauliString identity_string(int n);

// Jordan-Wigner image of the Majorana operator c_q + c^+_q:
// Z on every qubit below q, X on q.
PauliString majorana_x(int q, int n);

// Product of Majorana factors, modes applied right to left.
PauliString majorana_product(const std::vector<int>& modes, int n);
Vec apply_majorana_product(const Vec& state, const std::vector<int>& modes);

// Modes of the canonical Majorana product sending the reference to +-|det>:
// added orbitals ascending, removed orbitals descending, then the channel
// orbital itself when its occupation differs from the reference.
std::vector<int> canonical_modes(std::uint64_t det, const ReferenceState& ref,
                                 int x, bool x_in_string);

// Antisymmetrized effective doubles entering the excitation expansions,
// t2(ijab) + t1(ia) t1(jb) - t1(ib) t1(ja) extended antisymmetrically.
double t_tilde(const CCAmplitudes& amps, int i, int j, int a, int b);

struct LcuTerm {
    double coefficient = 0.0;
    int tier = 0;
    std::vector<int> modes;
    PauliString w;
};

// Linear-combination-of-unitaries form of one Green's function channel:
// ket side sums mu_l W_l |Phi>, bra side sums nu_k <Phi| W_k.
struct LcuExpansion {
    int p = -1;
    int q = -1;
    bool removal = true;  // lesser channel
    std::vector<LcuTerm> ket;
    std::vector<LcuTerm> bra;
};

enum class MapMode { full, t1_only };

// Expansion of <gs| c^+_q U(t) c_p |gs> in the coupled-cluster ground-state
// pair. The ket expands c_p e^T |Phi>: when p is occupied in the reference
// the set is the structural tier family seeded at p with coefficients
// 1, t1, t_tilde; otherwise the determinants of the vector are enumerated.
// The bra expands c_q applied to the dual vector over the product family
// seeded at q. Coefficients below 1e-14 are dropped and terms are ordered
// by (tier, modes).
LcuExpansion build_lesser_lcu(int p, int q, const CCAmplitudes& amps,
                              MapMode mode = MapMode::full);

// Same for <gs| c_p U(t) c^+_q |gs>. The structural ket seed requires q
// virtual in the reference; the tier index sets then exclude q.
LcuExpansion build_greater_lcu(int p, int q, const CCAmplitudes& amps,
                               MapMode mode = MapMode::full);

// Tier candidates before amplitude weighting, exposed for set-size checks.
// removal_seed selects the family seeded by an occupied orbital.
std::vector<std::vector<int>> structural_mode_candidates(const ReferenceState& ref,
                                                         int x, bool removal_seed,
                                                         bool spin_prune);

}  // namespace ccgf
