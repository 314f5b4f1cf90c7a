#include "ccgf/unitary_map.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ccgf {

namespace {

int letter_index(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
    }
    throw std::invalid_argument("pauli letter must be one of I X Y Z");
}

const char kLetters[4] = {'I', 'X', 'Y', 'Z'};

// Single-qubit products: entry [a][b] is (letter, phase) of P_a P_b.
struct Rule {
    char letter;
    cplx phase;
};

Rule single_product(char ca, char cb) {
    const int a = letter_index(ca), b = letter_index(cb);
    if (a == 0) return {cb, 1.0};
    if (b == 0) return {ca, 1.0};
    if (a == b) return {'I', 1.0};
    // Cyclic XY=iZ, YZ=iX, ZX=iY; reversed order flips the sign.
    static const int third[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
    const bool cyclic = (b - a + 3) % 3 == 1;
    return {kLetters[third[a][b]], cyclic ? cplx(0, 1) : cplx(0, -1)};
}

}  // namespace

PauliString PauliString::adjoint() const { return {std::conj(phase), letters}; }

PauliString PauliString::operator*(const PauliString& rhs) const {
    if (letters.size() != rhs.letters.size())
        throw std::invalid_argument("pauli string length mismatch");
    PauliString out;
    out.phase = phase * rhs.phase;
    out.letters.resize(letters.size());
    for (size_t q = 0; q < letters.size(); ++q) {
        const Rule r = single_product(letters[q], rhs.letters[q]);
        out.letters[q] = r.letter;
        out.phase *= r.phase;
    }
    return out;
}

CVec PauliString::apply(const CVec& state) const {
    const int n = n_qubits();
    if (state.size() != (1L << n))
        throw std::invalid_argument("state dimension does not match string length");
    std::uint64_t xmask = 0, ymask = 0, zmask = 0;
    for (int q = 0; q < n; ++q) {
        switch (letters[q]) {
            case 'X': xmask |= 1ull << q; break;
            case 'Y': xmask |= 1ull << q; ymask |= 1ull << q; break;
            case 'Z': zmask |= 1ull << q; break;
            default: break;
        }
    }
    const int ny = std::popcount(ymask);
    cplx ipow = 1.0;
    for (int k = 0; k < (ny & 3); ++k) ipow *= cplx(0, 1);
    CVec out = CVec::Zero(state.size());
    for (long d = 0; d < state.size(); ++d) {
        if (state[d] == cplx(0)) continue;
        const int flips = std::popcount((std::uint64_t)d & (zmask | ymask));
        const cplx f = phase * ipow * ((flips & 1) ? -1.0 : 1.0);
        out[d ^ (long)xmask] += f * state[d];
    }
    return out;
}

CMat PauliString::matrix() const {
    const int n = n_qubits();
    CMat m = CMat::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
        CMat p(2, 2);
        switch (letters[q]) {
            case 'I': p << 1, 0, 0, 1; break;
            case 'X': p << 0, 1, 1, 0; break;
            case 'Y': p << 0, cplx(0, -1), cplx(0, 1), 0; break;
            case 'Z': p << 1, 0, 0, -1; break;
            default: throw std::invalid_argument("pauli letter must be one of I X Y Z");
        }
        CMat out(m.rows() * 2, m.cols() * 2);
        out.block(0, 0, m.rows(), m.cols()) = p(0, 0) * m;
        out.block(0, m.cols(), m.rows(), m.cols()) = p(0, 1) * m;
        out.block(m.rows(), 0, m.rows(), m.cols()) = p(1, 0) * m;
        out.block(m.rows(), m.cols(), m.rows(), m.cols()) = p(1, 1) * m;
        m = std::move(out);
    }
    return phase * m;
}

std::string PauliString::label() const {
    std::string head;
    if (phase == cplx(1, 0)) head = "+";
    else if (phase == cplx(-1, 0)) head = "-";
    else if (phase == cplx(0, 1)) head = "+i";
    else if (phase == cplx(0, -1)) head = "-i";
    else head = "(" + std::to_string(phase.real()) + "," + std::to_string(phase.imag()) + ")";
    return head + letters;
}

PauliString identity_string(int n) { return {1.0, std::string(n, 'I')}; }

PauliString majorana_x(int q, int n) {
    if (q < 0 || q >= n) throw std::invalid_argument("qubit out of range");
    PauliString s = identity_string(n);
    for (int k = 0; k < q; ++k) s.letters[k] = 'Z';
    s.letters[q] = 'X';
    return s;
}

PauliString majorana_product(const std::vector<int>& modes, int n) {
    PauliString out = identity_string(n);
    for (int m : modes) out = out * majorana_x(m, n);
    return out;
}

Vec apply_majorana_product(const Vec& state, const std::vector<int>& modes) {
    Vec out = state;
    for (auto it = modes.rbegin(); it != modes.rend(); ++it)
        out = apply_annihilate(out, *it) + apply_create(out, *it);
    return out;
}

std::vector<int> canonical_modes(std::uint64_t det, const ReferenceState& ref,
                                 int x, bool x_in_string) {
    std::vector<int> added, removed;
    for (int q = 0; q < ref.n; ++q) {
        const bool in_det = (det >> q) & 1u;
        const bool in_ref = ref.occupied_bit(q);
        if (in_det && !in_ref) added.push_back(q);
        if (!in_det && in_ref) removed.push_back(q);
    }
    if (x_in_string) {
        std::erase(added, x);
        std::erase(removed, x);
    }
    std::vector<int> modes = added;
    modes.insert(modes.end(), removed.rbegin(), removed.rend());
    if (x_in_string) modes.push_back(x);
    return modes;
}

double t_tilde(const CCAmplitudes& amps, int i, int j, int a, int b) {
    return amps.t2(i, j, a, b) + amps.t1(i, a) * amps.t1(j, b) -
           amps.t1(i, b) * amps.t1(j, a);
}

std::vector<std::vector<int>> structural_mode_candidates(const ReferenceState& ref,
                                                         int x, bool removal_seed,
                                                         bool spin_prune) {
    const int nb = ref.n / 2 - 1;
    auto sz = [&](int q) { return (int)spin_of(q, nb); };
    std::vector<int> occ, virt;
    if (removal_seed) {
        for (int i : ref.occupied)
            if (i != x) occ.push_back(i);
        virt = ref.virtuals;
    } else {
        occ = ref.occupied;
        for (int a : ref.virtuals)
            if (a != x) virt.push_back(a);
    }
    std::vector<std::vector<int>> out;
    out.push_back({x});
    for (int a : virt)
        for (int i : occ) {
            if (spin_prune && sz(a) != sz(i)) continue;
            out.push_back({a, i, x});
        }
    for (size_t aa = 0; aa < virt.size(); ++aa)
        for (size_t bb = aa + 1; bb < virt.size(); ++bb)
            for (size_t ii = 0; ii < occ.size(); ++ii)
                for (size_t jj = ii + 1; jj < occ.size(); ++jj) {
                    const int a = virt[aa], b = virt[bb], i = occ[ii], j = occ[jj];
                    if (spin_prune && sz(a) + sz(b) != sz(i) + sz(j)) continue;
                    out.push_back({a, b, j, i, x});
                }
    return out;
}

namespace {

constexpr double kPrune = 1e-14;

Vec reference_vector(const ReferenceState& ref) {
    Vec phi = Vec::Zero(1L << ref.n);
    phi[(long)ref.occupation] = 1.0;
    return phi;
}

std::vector<LcuTerm> structural_terms(const ReferenceState& ref, int x,
                                      bool removal_seed, const CCAmplitudes& amps) {
    std::vector<LcuTerm> out;
    for (auto& modes : structural_mode_candidates(ref, x, removal_seed, true)) {
        double c = 0.0;
        if (modes.size() == 1)
            c = 1.0;
        else if (modes.size() == 3)
            c = amps.t1(modes[1], modes[0]);
        else
            c = t_tilde(amps, modes[3], modes[2], modes[0], modes[1]);
        if (std::abs(c) <= kPrune) continue;
        out.push_back({c, (int)modes.size() / 2, std::move(modes), {}});
    }
    return out;
}

// Expand a vector over canonical products: each retained determinant gives
// one term whose product maps the reference to exactly that determinant.
std::vector<LcuTerm> enumeration_terms(const Vec& y, const ReferenceState& ref,
                                       int x, bool x_in_string) {
    const Vec phi = reference_vector(ref);
    std::vector<LcuTerm> out;
    for (long d = 0; d < y.size(); ++d) {
        if (std::abs(y[d]) <= kPrune) continue;
        std::vector<int> modes = canonical_modes((std::uint64_t)d, ref, x, x_in_string);
        const Vec wphi = apply_majorana_product(phi, modes);
        if (std::abs(std::abs(wphi[d]) - 1.0) > 1e-12 || wphi.cwiseAbs().sum() > 1.0 + 1e-12)
            throw std::runtime_error("canonical product does not reach its determinant");
        out.push_back({wphi[d] * y[d], (int)modes.size() / 2, std::move(modes), {}});
    }
    return out;
}

void finalize_terms(std::vector<LcuTerm>& terms, int n) {
    std::sort(terms.begin(), terms.end(), [](const LcuTerm& a, const LcuTerm& b) {
        if (a.tier != b.tier) return a.tier < b.tier;
        return a.modes < b.modes;
    });
    for (auto& term : terms) term.w = majorana_product(term.modes, n);
}

void check_pair(int p, int q, int n) {
    if (p < 0 || p >= n || q < 0 || q >= n)
        throw std::domain_error("orbital index out of range");
}

const CCAmplitudes& select_amps(const CCAmplitudes& amps, MapMode mode,
                                CCAmplitudes& storage) {
    if (!amps.t_converged || !amps.lambda_converged)
        throw std::invalid_argument("expansion needs converged t and lambda amplitudes");
    if (mode == MapMode::full) return amps;
    storage = amps.impurity_singles_truncation();
    return storage;
}

}  // namespace

LcuExpansion build_lesser_lcu(int p, int q, const CCAmplitudes& amps, MapMode mode) {
    const ReferenceState& ref = amps.ref;
    check_pair(p, q, ref.n);
    CCAmplitudes storage;
    const CCAmplitudes& w = select_amps(amps, mode, storage);

    LcuExpansion out;
    out.p = p;
    out.q = q;
    out.removal = true;
    if (ref.occupied_bit(p)) {
        out.ket = structural_terms(ref, p, true, w);
    } else {
        const Vec y = apply_annihilate(cluster_exponential_state(w, ClusterForm::exp_t), p);
        out.ket = enumeration_terms(y, ref, p, false);
    }
    const Vec z = apply_annihilate(cluster_exponential_state(w, ClusterForm::dual_bra), q);
    out.bra = enumeration_terms(z, ref, q, ref.occupied_bit(q));
    finalize_terms(out.ket, ref.n);
    finalize_terms(out.bra, ref.n);
    return out;
}

LcuExpansion build_greater_lcu(int p, int q, const CCAmplitudes& amps, MapMode mode) {
    const ReferenceState& ref = amps.ref;
    check_pair(p, q, ref.n);
    CCAmplitudes storage;
    const CCAmplitudes& w = select_amps(amps, mode, storage);

    LcuExpansion out;
    out.p = p;
    out.q = q;
    out.removal = false;
    if (!ref.occupied_bit(q)) {
        out.ket = structural_terms(ref, q, false, w);
    } else {
        const Vec y = apply_create(cluster_exponential_state(w, ClusterForm::exp_t), q);
        out.ket = enumeration_terms(y, ref, q, false);
    }
    const Vec z = apply_create(cluster_exponential_state(w, ClusterForm::dual_bra), p);
    out.bra = enumeration_terms(z, ref, p, !ref.occupied_bit(p));
    finalize_terms(out.ket, ref.n);
    finalize_terms(out.bra, ref.n);
    return out;
}

}  // namespace ccgf
