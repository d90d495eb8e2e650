#pragma once

#include <map>

#include "pcpd/circuit.hpp"

namespace pcpd {

// A quadratic polynomial over the proof variables, stored sparsely.
// Quadratic monomials are kept canonically with i <= j.
struct Quad {
    fe c0 = 0;
    std::map<std::size_t, fe> lin;
    std::map<std::pair<std::size_t, std::size_t>, fe> quad;

    void add_lin(const PrimeField& F, std::size_t i, fe c) {
        fe& slot = lin[i];
        slot = F.add(slot, c);
        if (slot == 0) lin.erase(i);
    }
    void add_quad(const PrimeField& F, std::size_t i, std::size_t j, fe c) {
        if (i > j) std::swap(i, j);
        fe& slot = quad[{i, j}];
        slot = F.add(slot, c);
        if (slot == 0) quad.erase({i, j});
    }
};

inline fe quad_eval(const PrimeField& F, const Quad& q, const vec& pi) {
    fe acc = q.c0;
    for (auto& [i, c] : q.lin) acc = F.add(acc, F.mul(c, pi[i]));
    for (auto& [ij, c] : q.quad) acc = F.add(acc, F.mul(c, F.mul(pi[ij.first], pi[ij.second])));
    return acc;
}

// The compiled constraint system behind the initial verifier: one quadratic
// constraint per gate, output pins, b-output links and padding pins.  The
// proof layout is pi = a | b | gate traces (Phi, then each F_i) | padding.
struct QuadraticSystem {
    Circuit Phi;
    std::vector<Circuit> Fs;
    std::size_t orig_n = 0;       // Phi arity before padding
    std::size_t n = 0;            // a-segment length (padded)
    std::size_t ell = 0;
    std::size_t num_vars = 0;     // |pi|
    std::vector<Quad> constraints;
    std::vector<std::size_t> trace_base;   // wire-var base per circuit: Phi, F_1, ...

    std::size_t b_base() const { return n; }
    std::size_t s_base() const { return n + ell; }
};

inline std::size_t round_up_pow(std::size_t v, std::size_t h) {
    std::size_t r = 1;
    while (r < v) r *= h;
    return r;
}

// Compile (Phi, F_1..F_ell) into the quadratic system.  If pad_h > 0, the
// a-segment is zero-padded to a power of pad_h and pi is padded so that
// |pi| + 1 is a power of pad_h; padded positions are pinned to 0.
inline QuadraticSystem v0_compile(const PrimeField& F, const Circuit& Phi,
                                  const std::vector<Circuit>& Fs, std::size_t pad_h = 0) {
    Phi.validate();
    if (Phi.boolean) throw std::invalid_argument("v0_compile: arithmetize first");
    for (auto& f : Fs) {
        f.validate();
        if (f.boolean || f.output < 0) throw std::invalid_argument("v0_compile: bad F_i circuit");
        if (f.n_inputs != Phi.n_inputs) throw std::invalid_argument("v0_compile: arity mismatch");
    }
    QuadraticSystem sys;
    sys.Phi = Phi;
    sys.Fs = Fs;
    sys.orig_n = Phi.n_inputs;
    sys.ell = Fs.size();
    sys.n = pad_h > 1 ? round_up_pow(sys.orig_n, pad_h) : sys.orig_n;

    std::size_t next = sys.n + sys.ell;
    sys.trace_base.push_back(next);
    next += Phi.gates.size();
    for (auto& f : Fs) {
        sys.trace_base.push_back(next);
        next += f.gates.size();
    }
    std::size_t content_vars = next;
    sys.num_vars = content_vars;
    if (pad_h > 1) sys.num_vars = round_up_pow(content_vars + 1, pad_h) - 1;

    // wire reference -> pi variable, for circuit ci
    auto var_of = [&](std::size_t ci, const Circuit& c, int ref) -> std::size_t {
        if (ref < (int)c.n_inputs) return (std::size_t)ref;   // inputs share the a-segment
        return sys.trace_base[ci] + (std::size_t)(ref - (int)c.n_inputs);
    };

    auto gate_constraints = [&](std::size_t ci, const Circuit& c) {
        for (std::size_t g = 0; g < c.gates.size(); ++g) {
            const Gate& gate = c.gates[g];
            std::size_t v = sys.trace_base[ci] + g;
            Quad q;
            q.add_lin(F, v, 1);
            switch (gate.op) {
                case Op::CONST: q.c0 = F.neg(gate.cval % F.p()); break;
                case Op::ADD:
                    q.add_lin(F, var_of(ci, c, gate.a), F.neg(1));
                    q.add_lin(F, var_of(ci, c, gate.b), F.neg(1));
                    break;
                case Op::SUB:
                    q.add_lin(F, var_of(ci, c, gate.a), F.neg(1));
                    q.add_lin(F, var_of(ci, c, gate.b), 1);
                    break;
                case Op::MUL:
                    q.add_quad(F, var_of(ci, c, gate.a), var_of(ci, c, gate.b), F.neg(1));
                    break;
                case Op::SUB1:
                    q.c0 = F.neg(1);
                    q.add_lin(F, var_of(ci, c, gate.a), 1);
                    break;
                default: throw std::logic_error("v0_compile: boolean gate");
            }
            sys.constraints.push_back(std::move(q));
        }
    };

    gate_constraints(0, Phi);
    for (std::size_t i = 0; i < Fs.size(); ++i) gate_constraints(i + 1, Fs[i]);

    for (auto& [ref, target] : Phi.pins) {
        Quad q;
        q.add_lin(F, var_of(0, Phi, ref), 1);
        q.c0 = F.neg(target % F.p());
        sys.constraints.push_back(std::move(q));
    }
    for (std::size_t i = 0; i < Fs.size(); ++i) {
        Quad q;
        q.add_lin(F, sys.b_base() + i, 1);
        q.add_lin(F, var_of(i + 1, Fs[i], Fs[i].output), F.neg(1));
        sys.constraints.push_back(std::move(q));
    }
    // padding pins: unused a-positions and trailing pad variables
    for (std::size_t i = sys.orig_n; i < sys.n; ++i) {
        Quad q;
        q.add_lin(F, i, 1);
        sys.constraints.push_back(std::move(q));
    }
    for (std::size_t i = content_vars; i < sys.num_vars; ++i) {
        Quad q;
        q.add_lin(F, i, 1);
        sys.constraints.push_back(std::move(q));
    }
    return sys;
}

// The full proof string for assignment a: padded inputs, b = F(a), honest
// gate traces, zero padding.  Works for unsatisfying a too (the trace is
// still deterministic); use v0_witness when satisfaction matters.
inline vec assemble_pi(const PrimeField& F, const QuadraticSystem& sys, const vec& a) {
    if (a.size() != sys.orig_n) throw std::invalid_argument("assemble_pi: arity mismatch");
    vec pi(sys.num_vars, 0);
    for (std::size_t i = 0; i < sys.orig_n; ++i) pi[i] = a[i] % F.p();
    vec phi_vals = circuit_eval_all(F, sys.Phi, a);
    for (std::size_t g = 0; g < sys.Phi.gates.size(); ++g)
        pi[sys.trace_base[0] + g] = phi_vals[sys.Phi.n_inputs + g];
    for (std::size_t i = 0; i < sys.Fs.size(); ++i) {
        vec fv = circuit_eval_all(F, sys.Fs[i], a);
        for (std::size_t g = 0; g < sys.Fs[i].gates.size(); ++g)
            pi[sys.trace_base[i + 1] + g] = fv[sys.Fs[i].n_inputs + g];
        pi[sys.b_base() + i] = fv[sys.Fs[i].output];
    }
    return pi;
}

// (b, s) for a satisfying assignment, or nothing.
inline std::optional<std::pair<vec, vec>> v0_witness(const PrimeField& F, const QuadraticSystem& sys,
                                                     const vec& a) {
    if (!circuit_satisfied(F, sys.Phi, a)) return std::nullopt;
    vec pi = assemble_pi(F, sys, a);
    vec b(pi.begin() + sys.b_base(), pi.begin() + sys.b_base() + sys.ell);
    vec s(pi.begin() + sys.s_base(), pi.end());
    return std::make_pair(std::move(b), std::move(s));
}

// Reed-Solomon combination p = sum_k r^{k-1} constraint_k.  For honest pi
// every constraint vanishes so p(pi) = 0 for all r; a fixed violating pi
// survives for at most T-1 values of r.
inline Quad v0_combine(const PrimeField& F, const QuadraticSystem& sys, fe r) {
    Quad p;
    fe w = 1;
    for (auto& c : sys.constraints) {
        p.c0 = F.add(p.c0, F.mul(w, c.c0));
        for (auto& [i, coef] : c.lin) p.add_lin(F, i, F.mul(w, coef));
        for (auto& [ij, coef] : c.quad) p.add_quad(F, ij.first, ij.second, F.mul(w, coef));
        w = F.mul(w, r);
    }
    return p;
}

inline Quad v0_sample(const PrimeField& F, const QuadraticSystem& sys, Rng& rng) {
    return v0_combine(F, sys, F.random(rng));
}

} // namespace pcpd
