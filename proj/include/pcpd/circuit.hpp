#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pcpd/field.hpp"

namespace pcpd {

// Gate ops.  AND/NOT are the boolean source ops; the rest are arithmetic.
// SUB1 is the 1-x gate that NOT arithmetizes to.
enum class Op { CONST, ADD, SUB, MUL, SUB1, AND, NOT };

inline bool op_boolean(Op op) { return op == Op::AND || op == Op::NOT; }
inline bool op_unary(Op op) { return op == Op::NOT || op == Op::SUB1; }

// Gate argument references: 0..n-1 are circuit inputs, n+i is gate i.
struct Gate {
    Op op;
    int a = -1, b = -1;
    fe cval = 0;      // CONST only
};

// A circuit with optional pinned outputs.  Satisfaction means every pinned
// gate evaluates to its target; a plain boolean circuit pins its single
// output to 1.  Function circuits (the F_i) use `output` and have no pins.
struct Circuit {
    bool boolean = false;
    std::size_t n_inputs = 0;
    std::vector<Gate> gates;
    std::vector<std::pair<int, fe>> pins;   // (reference, target value)
    int output = -1;

    int ref_of_gate(std::size_t g) const { return (int)(n_inputs + g); }

    int push(Op op, int a = -1, int b = -1, fe cval = 0) {
        gates.push_back(Gate{op, a, b, cval});
        return (int)(n_inputs + gates.size() - 1);
    }

    std::size_t size() const { return gates.size(); }

    void validate() const {
        for (std::size_t g = 0; g < gates.size(); ++g) {
            const Gate& gate = gates[g];
            int limit = (int)(n_inputs + g);
            if (gate.op != Op::CONST && (gate.a < 0 || gate.a >= limit))
                throw std::invalid_argument("circuit: forward or missing reference");
            if (!op_unary(gate.op) && gate.op != Op::CONST && (gate.b < 0 || gate.b >= limit))
                throw std::invalid_argument("circuit: forward or missing reference");
            if (boolean && !op_boolean(gate.op))
                throw std::invalid_argument("circuit: non-boolean gate in boolean circuit");
            if (!boolean && op_boolean(gate.op))
                throw std::invalid_argument("circuit: boolean gate in arithmetic circuit");
        }
    }
};

// Values of every wire: inputs followed by gate outputs.
inline vec circuit_eval_all(const PrimeField& F, const Circuit& c, const vec& inputs) {
    if (inputs.size() != c.n_inputs) throw std::invalid_argument("circuit_eval_all: arity mismatch");
    vec val(c.n_inputs + c.gates.size());
    for (std::size_t i = 0; i < c.n_inputs; ++i) val[i] = inputs[i] % F.p();
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        const Gate& gate = c.gates[g];
        fe& out = val[c.n_inputs + g];
        switch (gate.op) {
            case Op::CONST: out = gate.cval % F.p(); break;
            case Op::ADD: out = F.add(val[gate.a], val[gate.b]); break;
            case Op::SUB: out = F.sub(val[gate.a], val[gate.b]); break;
            case Op::MUL:
            case Op::AND: out = F.mul(val[gate.a], val[gate.b]); break;
            case Op::SUB1:
            case Op::NOT: out = F.sub(1, val[gate.a]); break;
        }
    }
    return val;
}

inline fe circuit_output(const PrimeField& F, const Circuit& c, const vec& inputs) {
    if (c.output < 0) throw std::logic_error("circuit_output: no output designated");
    return circuit_eval_all(F, c, inputs)[c.output];
}

inline bool circuit_satisfied(const PrimeField& F, const Circuit& c, const vec& inputs) {
    vec val = circuit_eval_all(F, c, inputs);
    for (auto& [ref, target] : c.pins)
        if (val[ref] != target % F.p()) return false;
    return true;
}

// AND -> multiplication, NOT -> 1-x.  Agrees with the boolean circuit on
// 0/1 inputs; pins carry over.
inline Circuit arithmetize(const Circuit& c) {
    if (!c.boolean) throw std::invalid_argument("arithmetize: circuit is not boolean");
    c.validate();
    Circuit out = c;
    out.boolean = false;
    for (auto& g : out.gates) {
        if (g.op == Op::AND) g.op = Op::MUL;
        else if (g.op == Op::NOT) g.op = Op::SUB1;
    }
    return out;
}

// ---- text format ---------------------------------------------------------
//
//   inputs <n>
//   g<k> = <OP> <arg> [<arg>]        OP in AND NOT ADD SUB MUL SUB1
//   g<k> = CONST <value>
//   output g<k> [= <target>]         default target 1
//
// Args are x<i> (inputs, 1-based) or g<i> (earlier gates, 1-based in file
// order); '#' starts a comment.  Boolean circuits use only AND/NOT.
inline Circuit parse_circuit(const std::string& text) {
    Circuit c;
    bool have_inputs = false, any_bool = false, any_arith = false;
    std::istringstream in(text);
    std::string line;
    auto parse_ref = [&](const std::string& tok) -> int {
        if (tok.size() < 2) throw std::invalid_argument("circuit parse: bad reference '" + tok + "'");
        long idx = std::stol(tok.substr(1));
        if (tok[0] == 'x') {
            if (idx < 1 || (std::size_t)idx > c.n_inputs) throw std::invalid_argument("circuit parse: input out of range");
            return (int)(idx - 1);
        }
        if (tok[0] == 'g') {
            if (idx < 1 || (std::size_t)idx > c.gates.size() + 1) throw std::invalid_argument("circuit parse: gate out of range");
            return (int)(c.n_inputs + idx - 1);
        }
        throw std::invalid_argument("circuit parse: bad reference '" + tok + "'");
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "inputs") {
            if (!(ls >> c.n_inputs)) throw std::invalid_argument("circuit parse: bad inputs line");
            have_inputs = true;
        } else if (tok == "output") {
            std::string ref, eq;
            if (!(ls >> ref)) throw std::invalid_argument("circuit parse: bad output line");
            fe target = 1;
            if (ls >> eq) {
                if (eq != "=" || !(ls >> target)) throw std::invalid_argument("circuit parse: bad output target");
            }
            int r = parse_ref(ref);
            c.pins.emplace_back(r, target);
            c.output = r;
        } else {
            if (!have_inputs) throw std::invalid_argument("circuit parse: gate before inputs line");
            std::string eq, opname;
            if (!(ls >> eq >> opname) || eq != "=") throw std::invalid_argument("circuit parse: bad gate line");
            std::size_t expect = c.gates.size() + 1;
            if (tok != "g" + std::to_string(expect))
                throw std::invalid_argument("circuit parse: gates must be named in order, got '" + tok + "'");
            Gate g;
            if (opname == "AND") g.op = Op::AND;
            else if (opname == "NOT") g.op = Op::NOT;
            else if (opname == "ADD") g.op = Op::ADD;
            else if (opname == "SUB") g.op = Op::SUB;
            else if (opname == "MUL") g.op = Op::MUL;
            else if (opname == "SUB1") g.op = Op::SUB1;
            else if (opname == "CONST") g.op = Op::CONST;
            else throw std::invalid_argument("circuit parse: unknown op '" + opname + "'");
            if (op_boolean(g.op)) any_bool = true; else any_arith = true;
            if (g.op == Op::CONST) {
                if (!(ls >> g.cval)) throw std::invalid_argument("circuit parse: CONST needs a value");
            } else {
                std::string a;
                if (!(ls >> a)) throw std::invalid_argument("circuit parse: missing argument");
                g.a = parse_ref(a);
                if (!op_unary(g.op)) {
                    std::string b;
                    if (!(ls >> b)) throw std::invalid_argument("circuit parse: missing argument");
                    g.b = parse_ref(b);
                }
            }
            c.gates.push_back(g);
        }
    }
    if (any_bool && any_arith) throw std::invalid_argument("circuit parse: mixed boolean/arithmetic ops");
    c.boolean = any_bool;
    if (c.pins.empty() && !c.gates.empty()) {
        c.output = (int)(c.n_inputs + c.gates.size() - 1);
        c.pins.emplace_back(c.output, 1);
    }
    c.validate();
    return c;
}

// Exhaustive satisfying-assignment search over {0,1}^n (boolean witnesses).
inline std::optional<vec> find_witness(const PrimeField& F, const Circuit& c) {
    if (c.n_inputs > 20) throw std::length_error("find_witness: too many inputs to search");
    for (std::uint64_t mask = 0; mask < (1ull << c.n_inputs); ++mask) {
        vec a(c.n_inputs);
        for (std::size_t i = 0; i < c.n_inputs; ++i) a[i] = (mask >> i) & 1;
        if (circuit_satisfied(F, c, a)) return a;
    }
    return std::nullopt;
}

} // namespace pcpd
