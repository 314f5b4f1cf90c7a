#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ccgf {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

// Largest bath size accepted anywhere. Keeps Fock dimensions at or below 2^14.
inline constexpr int kMaxBath = 6;

enum class Spin { down = 0, up = 1 };

// Single-impurity Anderson model on n_bath + 1 levels.
//   H = sum_{i,s} eps_i n_{i,s} + u_c n_{0,up} n_{0,dn}
//       + sum_{i>=1,s} v_{i-1} (c^+_{0,s} c_{i,s} + c^+_{i,s} c_{0,s})
// eps has n_bath + 1 entries with the impurity first, v has n_bath entries.
struct AimParams {
    int n_bath = 0;
    double u_c = 0.0;
    std::vector<double> eps;
    std::vector<double> v;

    int n_levels() const { return n_bath + 1; }
    int n_spin_orbitals() const { return 2 * (n_bath + 1); }
    long dim() const { return 1L << n_spin_orbitals(); }

    // Throws std::invalid_argument on inconsistent sizes, negative n_bath,
    // n_bath beyond kMaxBath, or non-finite entries.
    void validate() const;
};

// Spin-orbital ordering: all spin-down first, then all spin-up, impurity
// leading each block. Orbital q corresponds to bit q of a basis index,
// basis index of a determinant is sum_q bit_q 2^q.
int jw_qubit_index(int level, Spin spin, int n_bath);

// Level and spin of a spin-orbital index.
int level_of(int q, int n_bath);
Spin spin_of(int q, int n_bath);

// One normal-ordered product of ladder operators with a real coefficient.
// ops are applied right to left; each entry is (spin_orbital, dagger).
struct FermionTerm {
    double coefficient = 0.0;
    std::vector<std::pair<int, bool>> ops;
};

// Reference determinant with cached occupied / virtual index lists.
struct ReferenceState {
    std::uint64_t occupation = 0;
    int n = 0;
    std::vector<int> occupied;
    std::vector<int> virtuals;

    bool occupied_bit(int q) const { return (occupation >> q) & 1u; }
    // Qubit 0 printed leftmost.
    std::string bitstring() const;
};

// Default filling: n_bath + 1 electrons. Bath electrons pair up in the
// lowest bath levels by energy; a leftover unpaired bath electron takes
// spin down, and the impurity electron is placed to bring S_z back to the
// sector containing zero.
ReferenceState reference_state(const AimParams& p);

// Explicit occupation override (bit q set means spin-orbital q occupied).
ReferenceState reference_state(const AimParams& p, std::uint64_t occupation_bits);

// Jordan-Wigner ladder operators on Fock vectors. The parity factor is
// (-1)^(number of occupied orbitals below q).
Vec apply_create(const Vec& state, int q);
Vec apply_annihilate(const Vec& state, int q);
CVec apply_create(const CVec& state, int q);
CVec apply_annihilate(const CVec& state, int q);

// Hamiltonian as a list of second-quantized terms. Zero-coefficient terms
// are dropped. Number operators appear once per orbital, hopping terms in
// conjugate pairs.
std::vector<FermionTerm> hamiltonian_terms(const AimParams& p);

// Dense matrix over the full Fock space, built from the term list.
Mat build_hamiltonian(const AimParams& p);

// Apply a term list to a state (used by tests to cross check the matrix).
Vec apply_terms(const std::vector<FermionTerm>& terms, const Vec& state);

// Diagonal (potential) part of H per determinant: on-site energies plus the
// interaction when both impurity orbitals are filled.
double diagonal_energy(const AimParams& p, std::uint64_t det);

// One Pauli string with a real coefficient, from the qubit form of H.
struct PauliCoefficient {
    std::string letters;
    double coefficient = 0.0;
};

// Qubit decomposition of H with like strings merged and the identity
// component dropped; used for the one-norm entering oracle cost models.
std::vector<PauliCoefficient> pauli_decomposition(const AimParams& p);
double pauli_one_norm(const AimParams& p);

}  // namespace ccgf
