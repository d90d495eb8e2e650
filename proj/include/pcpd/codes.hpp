#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "pcpd/poly.hpp"

namespace pcpd {

enum class CodeKind { hadamard, quadratic_hadamard, lde };

// Indices into a codeword are tuples of field elements: a point alpha in F^n
// (Hadamard), F^{n+n^2} (quadratic Hadamard) or F^m (low degree extension).
// Dense enumeration maps j in [N] to its base-p digits, little endian.
struct CodeSpec {
    CodeKind kind;
    fe p = 0;
    std::size_t n = 0;      // message length
    vec H;                  // lde only
    std::size_t m = 0;      // lde only

    std::size_t index_len() const {
        switch (kind) {
            case CodeKind::hadamard: return n;
            case CodeKind::quadratic_hadamard: return n + n * n;
            case CodeKind::lde: return m;
        }
        return 0;
    }

    double block_bits() const { return (double)index_len() * std::log2((double)p); }

    // Relative agreement bound between distinct codewords.
    double mu() const {
        if (kind == CodeKind::lde) return (double)H.size() * (double)m / (double)p;
        return 1.0 / (double)p;
    }

    double eta() const { return 2.0 * std::cbrt(4.0 * mu()); }
};

// tau = (4 mu)^{1/3}, eta = 2 tau.
inline std::pair<double, double> agreement_param(double mu) {
    double tau = std::cbrt(4.0 * mu);
    return {tau, 2.0 * tau};
}

// A word in oracle form: answers any index tuple.
struct Word {
    CodeSpec code;
    std::function<fe(const vec&)> at;
};

inline Word hadamard_encode(const PrimeField& F, vec a) {
    CodeSpec spec{CodeKind::hadamard, F.p(), a.size(), {}, 0};
    return Word{spec, [&F, a = std::move(a)](const vec& alpha) {
                    if (alpha.size() != a.size()) throw std::invalid_argument("hadamard: bad index");
                    return dot(F, alpha, a);
                }};
}

// Underlying string of the QH encoding: a followed by a (x) a, entry (i,i')
// of the tensor block at offset n + (i-1)n + (i'-1) for 1-based i,i'.
inline vec qh_string(const PrimeField& F, const vec& a) {
    std::size_t n = a.size();
    vec w(n + n * n);
    for (std::size_t i = 0; i < n; ++i) w[i] = a[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[n + i * n + j] = F.mul(a[i], a[j]);
    return w;
}

inline Word qh_encode(const PrimeField& F, const vec& a) {
    CodeSpec spec{CodeKind::quadratic_hadamard, F.p(), a.size(), {}, 0};
    return Word{spec, [&F, w = qh_string(F, a)](const vec& alpha) {
                    if (alpha.size() != w.size()) throw std::invalid_argument("qh: bad index");
                    return dot(F, alpha, w);
                }};
}

// Low degree extension of a on the subcube H^m: string position x~ (1-based)
// sits at the grid point with base-h digits of x~ - 1; positions past |a| are
// zero-padded.
inline MultiPoly lde_encode(const PrimeField& F, const vec& a, const vec& H, std::size_t m) {
    std::size_t h = H.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= h;
    if (total < a.size()) throw std::invalid_argument("lde_encode: h^m < n");
    return interpolate_grid(F, H, m, [&](std::size_t idx) { return idx < a.size() ? a[idx] : 0; });
}

inline Word lde_word(const PrimeField& F, const vec& a, const vec& H, std::size_t m) {
    CodeSpec spec{CodeKind::lde, F.p(), a.size(), H, m};
    return Word{spec, [&F, f = lde_encode(F, a, H, m)](const vec& x) { return f.eval(F, x); }};
}

// ---- brute-force oracles on tiny codes ----------------------------------

inline vec index_digits(fe p, std::size_t len, std::uint64_t j) {
    vec d(len);
    for (std::size_t i = 0; i < len; ++i) {
        d[i] = j % p;
        j /= p;
    }
    return d;
}

inline fe encode_at(const PrimeField& F, const CodeSpec& spec, const vec& msg, const vec& index) {
    switch (spec.kind) {
        case CodeKind::hadamard: return dot(F, index, msg);
        case CodeKind::quadratic_hadamard: return dot(F, index, qh_string(F, msg));
        case CodeKind::lde: return lde_encode(F, msg, spec.H, spec.m).eval(F, index);
    }
    throw std::logic_error("encode_at: bad kind");
}

// Dense codeword table over the full index space [N]; tiny codes only.
inline vec dense_codeword(const PrimeField& F, const CodeSpec& spec, const vec& msg) {
    std::size_t len = spec.index_len();
    std::uint64_t N = 1;
    for (std::size_t i = 0; i < len; ++i) {
        N *= F.p();
        if (N > kCoeffCap) throw std::length_error("dense_codeword: block too large");
    }
    vec w(N);
    if (spec.kind == CodeKind::lde) {
        MultiPoly f = lde_encode(F, msg, spec.H, spec.m);
        for (std::uint64_t j = 0; j < N; ++j) w[j] = f.eval(F, index_digits(F.p(), len, j));
    } else {
        vec str = spec.kind == CodeKind::hadamard ? msg : qh_string(F, msg);
        for (std::uint64_t j = 0; j < N; ++j) w[j] = dot(F, index_digits(F.p(), len, j), str);
    }
    return w;
}

// All messages whose codeword agrees with w on at least tau = tau_num/tau_den
// of the indices.  Exact integer arithmetic; brute force over the message
// space (capability error if not enumerable).
inline std::vector<vec> admissible_list(const PrimeField& F, const CodeSpec& spec, const vec& w,
                                        std::uint64_t tau_num, std::uint64_t tau_den) {
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < spec.n; ++i) {
        space *= F.p();
        if (space > kCoeffCap) throw std::length_error("admissible_list: message space too large");
    }
    std::uint64_t N = w.size();
    std::vector<vec> out;
    for (std::uint64_t msg_id = 0; msg_id < space; ++msg_id) {
        vec msg = index_digits(F.p(), spec.n, msg_id);
        vec cw = dense_codeword(F, spec, msg);
        std::uint64_t agree = 0;
        for (std::uint64_t j = 0; j < N; ++j)
            if (cw[j] == w[j]) ++agree;
        if (agree * tau_den >= tau_num * N) out.push_back(std::move(msg));
    }
    return out;
}

// The tau-local decoding function W(j): the unique admissible message whose
// codeword matches w at j, or nothing (no match / ambiguous collapse to one
// bottom value).
inline std::optional<vec> local_decode(const PrimeField& F, const CodeSpec& spec, const vec& w,
                                       std::uint64_t j, std::uint64_t tau_num, std::uint64_t tau_den) {
    auto list = admissible_list(F, spec, w, tau_num, tau_den);
    std::optional<vec> found;
    vec idx = index_digits(F.p(), spec.index_len(), j);
    for (auto& msg : list) {
        if (encode_at(F, spec, msg, idx) == w[j]) {
            if (found) return std::nullopt;   // ambiguous
            found = msg;
        }
    }
    return found;
}

} // namespace pcpd
