#include "ccgf/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace ccgf {

void AimParams::validate() const {
    if (n_bath < 0 || n_bath > kMaxBath)
        throw std::invalid_argument("n_bath must lie in [0, " + std::to_string(kMaxBath) + "]");
    if ((int)eps.size() != n_bath + 1)
        throw std::invalid_argument("eps needs n_bath + 1 entries (impurity first)");
    if ((int)v.size() != n_bath)
        throw std::invalid_argument("v needs n_bath entries");
    auto bad = [](double x) { return !std::isfinite(x); };
    if (bad(u_c) || std::any_of(eps.begin(), eps.end(), bad) ||
        std::any_of(v.begin(), v.end(), bad))
        throw std::invalid_argument("model parameters must be finite");
}

int jw_qubit_index(int level, Spin spin, int n_bath) {
    if (level < 0 || level > n_bath)
        throw std::invalid_argument("level out of range");
    return spin == Spin::down ? level : n_bath + 1 + level;
}

int level_of(int q, int n_bath) {
    return q <= n_bath ? q : q - (n_bath + 1);
}

Spin spin_of(int q, int n_bath) {
    return q <= n_bath ? Spin::down : Spin::up;
}

std::string ReferenceState::bitstring() const {
    std::string s(n, '0');
    for (int q = 0; q < n; ++q)
        if (occupied_bit(q)) s[q] = '1';
    return s;
}

ReferenceState reference_state(const AimParams& p, std::uint64_t occupation_bits) {
    p.validate();
    const int n = p.n_spin_orbitals();
    if (n < 64 && (occupation_bits >> n) != 0)
        throw std::invalid_argument("occupation bits outside the spin-orbital register");
    ReferenceState ref;
    ref.occupation = occupation_bits;
    ref.n = n;
    for (int q = 0; q < n; ++q) {
        if (ref.occupied_bit(q))
            ref.occupied.push_back(q);
        else
            ref.virtuals.push_back(q);
    }
    return ref;
}

ReferenceState reference_state(const AimParams& p) {
    p.validate();
    const int nb = p.n_bath;
    // Bath levels sorted by on-site energy, index breaking ties.
    std::vector<int> order(nb);
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return p.eps[a] < p.eps[b]; });

    std::uint64_t bits = 0;
    const int pairs = nb / 2;
    for (int k = 0; k < pairs; ++k) {
        bits |= 1ull << jw_qubit_index(order[k], Spin::down, nb);
        bits |= 1ull << jw_qubit_index(order[k], Spin::up, nb);
    }
    int twice_sz = 0;
    if (nb % 2 == 1) {
        bits |= 1ull << jw_qubit_index(order[pairs], Spin::down, nb);
        twice_sz -= 1;
    }
    // Impurity electron: pick the spin that moves S_z closest to zero,
    // spin down on a tie.
    Spin imp = (std::abs(twice_sz - 1) <= std::abs(twice_sz + 1)) ? Spin::down : Spin::up;
    bits |= 1ull << jw_qubit_index(0, imp, nb);
    return reference_state(p, bits);
}

namespace {

inline double parity_below(std::uint64_t bits, int q) {
    const std::uint64_t mask = (1ull << q) - 1;
    return (std::popcount(bits & mask) & 1) ? -1.0 : 1.0;
}

template <class VecT>
VecT create_impl(const VecT& state, int q) {
    const long dim = state.size();
    VecT out = VecT::Zero(dim);
    const std::uint64_t bit = 1ull << q;
    for (long b = 0; b < dim; ++b) {
        const auto a = state[b];
        if (a == typename VecT::Scalar(0)) continue;
        if (b & bit) continue;
        out[b | bit] += parity_below(b, q) * a;
    }
    return out;
}

template <class VecT>
VecT annihilate_impl(const VecT& state, int q) {
    const long dim = state.size();
    VecT out = VecT::Zero(dim);
    const std::uint64_t bit = 1ull << q;
    for (long b = 0; b < dim; ++b) {
        const auto a = state[b];
        if (a == typename VecT::Scalar(0)) continue;
        if (!(b & bit)) continue;
        out[b & ~bit] += parity_below(b, q) * a;
    }
    return out;
}

}  // namespace

Vec apply_create(const Vec& state, int q) { return create_impl(state, q); }
Vec apply_annihilate(const Vec& state, int q) { return annihilate_impl(state, q); }
CVec apply_create(const CVec& state, int q) { return create_impl(state, q); }
CVec apply_annihilate(const CVec& state, int q) { return annihilate_impl(state, q); }

std::vector<FermionTerm> hamiltonian_terms(const AimParams& p) {
    p.validate();
    const int nb = p.n_bath;
    std::vector<FermionTerm> terms;
    for (int i = 0; i <= nb; ++i) {
        if (p.eps[i] == 0.0) continue;
        for (Spin s : {Spin::down, Spin::up}) {
            const int q = jw_qubit_index(i, s, nb);
            terms.push_back({p.eps[i], {{q, true}, {q, false}}});
        }
    }
    if (p.u_c != 0.0) {
        const int qd = jw_qubit_index(0, Spin::down, nb);
        const int qu = jw_qubit_index(0, Spin::up, nb);
        terms.push_back({p.u_c, {{qu, true}, {qu, false}, {qd, true}, {qd, false}}});
    }
    for (int i = 1; i <= nb; ++i) {
        if (p.v[i - 1] == 0.0) continue;
        for (Spin s : {Spin::down, Spin::up}) {
            const int q0 = jw_qubit_index(0, s, nb);
            const int qi = jw_qubit_index(i, s, nb);
            terms.push_back({p.v[i - 1], {{q0, true}, {qi, false}}});
            terms.push_back({p.v[i - 1], {{qi, true}, {q0, false}}});
        }
    }
    return terms;
}

Vec apply_terms(const std::vector<FermionTerm>& terms, const Vec& state) {
    Vec out = Vec::Zero(state.size());
    for (const auto& term : terms) {
        Vec w = state;
        for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it)
            w = it->second ? apply_create(w, it->first) : apply_annihilate(w, it->first);
        out += term.coefficient * w;
    }
    return out;
}

Mat build_hamiltonian(const AimParams& p) {
    const auto terms = hamiltonian_terms(p);
    const long dim = p.dim();
    Mat H = Mat::Zero(dim, dim);
    for (const auto& term : terms) {
        for (long b = 0; b < dim; ++b) {
            std::uint64_t det = (std::uint64_t)b;
            double sign = 1.0;
            bool dead = false;
            for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) {
                const int q = it->first;
                const std::uint64_t bit = 1ull << q;
                const bool occ = det & bit;
                if (it->second == occ) { dead = true; break; }
                sign *= parity_below(det, q);
                det ^= bit;
            }
            if (!dead) H((long)det, b) += term.coefficient * sign;
        }
    }
    return H;
}

double diagonal_energy(const AimParams& p, std::uint64_t det) {
    const int nb = p.n_bath;
    double e = 0.0;
    for (int i = 0; i <= nb; ++i) {
        for (Spin s : {Spin::down, Spin::up})
            if ((det >> jw_qubit_index(i, s, nb)) & 1) e += p.eps[i];
    }
    const std::uint64_t imp = (1ull << jw_qubit_index(0, Spin::down, nb)) |
                              (1ull << jw_qubit_index(0, Spin::up, nb));
    if ((det & imp) == imp) e += p.u_c;
    return e;
}

std::vector<PauliCoefficient> pauli_decomposition(const AimParams& p) {
    p.validate();
    const int nb = p.n_bath;
    const int n = p.n_spin_orbitals();
    const int qd = jw_qubit_index(0, Spin::down, nb);
    const int qu = jw_qubit_index(0, Spin::up, nb);

    // n_q = (I - Z_q)/2 and n_up n_dn = (I - Z_u)(I - Z_d)/4 give single-Z
    // weights -eps/2 (minus u_c/4 on the impurity) and one ZZ string u_c/4.
    std::vector<double> zc(n, 0.0);
    for (int q = 0; q < n; ++q) zc[q] = -0.5 * p.eps[level_of(q, nb)];
    zc[qd] -= 0.25 * p.u_c;
    zc[qu] -= 0.25 * p.u_c;

    std::vector<PauliCoefficient> out;
    auto push = [&](std::string letters, double c) {
        if (c != 0.0) out.push_back({std::move(letters), c});
    };
    for (int q = 0; q < n; ++q) {
        std::string s(n, 'I');
        s[q] = 'Z';
        push(std::move(s), zc[q]);
    }
    {
        std::string s(n, 'I');
        s[qd] = 'Z';
        s[qu] = 'Z';
        push(std::move(s), 0.25 * p.u_c);
    }
    // Hopping pair c^+_p c_q + c^+_q c_p maps to (X Z..Z X + Y Z..Z Y)/2.
    for (int i = 1; i <= nb; ++i) {
        const double c = 0.5 * p.v[i - 1];
        if (c == 0.0) continue;
        for (Spin s : {Spin::down, Spin::up}) {
            const int a = jw_qubit_index(0, s, nb);
            const int b = jw_qubit_index(i, s, nb);
            for (char xy : {'X', 'Y'}) {
                std::string str(n, 'I');
                str[a] = xy;
                str[b] = xy;
                for (int q = a + 1; q < b; ++q) str[q] = 'Z';
                push(std::move(str), c);
            }
        }
    }
    return out;
}

double pauli_one_norm(const AimParams& p) {
    double s = 0.0;
    for (const auto& term : pauli_decomposition(p)) s += std::abs(term.coefficient);
    return s;
}

}  // namespace ccgf
