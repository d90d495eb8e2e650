#pragma once

#include <memory>
#include <string>

#include "pcpd/codes.hpp"
#include "pcpd/circuit.hpp"
#include "pcpd/rng.hpp"

namespace pcpd {

// A query to one prover.  `tag` disambiguates query families within a prover
// (plain protocols use 0); `blocks` carries the query content.  Composed
// protocols prepend the outer round context as extra blocks, so comparison
// must be structural.
struct Query {
    int tag = 0;
    std::vector<vec> blocks;

    friend bool operator<(const Query& a, const Query& b) {
        if (a.tag != b.tag) return a.tag < b.tag;
        return a.blocks < b.blocks;
    }
    friend bool operator==(const Query& a, const Query& b) {
        return a.tag == b.tag && a.blocks == b.blocks;
    }
};

// One round of the protocol, fully determined by (R, j): the per-prover
// queries and the local tests over the big prover's answer alpha.
//  - predicate: pinned circuit over alpha (the plan's acceptance predicate)
//  - projections[i]: function circuit whose value must equal small prover
//    i+1's answer component
//  - outputs[t]: function circuit producing decoded output t (the decoded
//    codeword symbol is last)
struct RoundPlan {
    std::vector<Query> queries;        // queries[0] goes to the big prover
    Circuit predicate;
    std::vector<Circuit> projections;
    std::vector<Circuit> outputs;
    std::vector<std::string> proj_names;   // labels for failure reporting
};

// Provers answer queries; answers are value tuples (the big prover may answer
// with a digest vector, small provers answer a single value each).
struct Provers {
    virtual ~Provers() = default;
    virtual vec answer(std::size_t prover, const Query& q) = 0;
};

// A k-prover l-answer decoding verifier for some encoding E.  `round`
// describes the verifier's behaviour on randomness R and index j; everything
// else is parameter bookkeeping used by composition and the harness.
struct DecoderSpec {
    virtual ~DecoderSpec() = default;

    virtual std::string name() const = 0;
    virtual std::size_t provers() const = 0;           // k
    virtual std::size_t answers() const = 0;           // l
    virtual std::size_t answer_size() const = 0;       // s, big prover answer length
    virtual std::size_t witness_len() const = 0;       // message length of E
    virtual std::size_t input_size() const = 0;        // instance size bound n
    virtual double randomness_bits() const = 0;
    virtual double index_bits() const = 0;             // log2 of E's block length
    virtual double delta() const = 0;
    virtual double eta() const = 0;

    virtual vec sample_index(Rng& rng) const = 0;
    virtual fe encode_symbol(const PrimeField& F, const vec& witness, const vec& j) const = 0;
    virtual RoundPlan round(const PrimeField& F, std::uint64_t R, const vec& j) const = 0;
    virtual std::shared_ptr<Provers> honest_provers(const PrimeField& F, const vec& witness) const = 0;

    // What an honest round outputs: the instance's function values on the
    // witness followed by E(witness)_j.
    virtual vec expected_outputs(const PrimeField& F, const vec& witness, const vec& j) const = 0;
};

struct RoundResult {
    bool accept = true;
    std::string first_fail;     // empty when accepted
    vec alpha;                  // big prover answer
    vec outputs;                // populated iff accept
};

// Run one round: draw the plan, collect answers, check the predicate and the
// projections, and decode the outputs from alpha.
inline RoundResult run_round(const PrimeField& F, const DecoderSpec& spec, Provers& provers,
                             std::uint64_t R, const vec& j) {
    RoundPlan plan = spec.round(F, R, j);
    if (plan.queries.size() != spec.provers())
        throw std::logic_error("run_round: query count mismatch");
    RoundResult res;
    res.alpha = provers.answer(0, plan.queries[0]);
    if (res.alpha.size() != spec.answer_size())
        throw std::logic_error("run_round: answer size mismatch");
    if (!circuit_satisfied(F, plan.predicate, res.alpha)) {
        res.accept = false;
        res.first_fail = "predicate";
        return res;
    }
    for (std::size_t i = 0; i < plan.projections.size(); ++i) {
        vec small = provers.answer(i + 1, plan.queries[i + 1]);
        if (small.size() != 1) throw std::logic_error("run_round: small prover answer not scalar");
        if (circuit_output(F, plan.projections[i], res.alpha) != small[0]) {
            res.accept = false;
            res.first_fail = i < plan.proj_names.size() ? plan.proj_names[i]
                                                        : "proj:" + std::to_string(i + 1);
            return res;
        }
    }
    res.outputs.reserve(plan.outputs.size());
    for (auto& out : plan.outputs) res.outputs.push_back(circuit_output(F, out, res.alpha));
    return res;
}

// ---- shared circuit builders over an answer vector -----------------------

// c0 + sum coeffs[i] * alpha[i] as a function circuit of the given arity.
inline Circuit linear_form_circuit(const PrimeField&, std::size_t arity,
                                   const std::map<std::size_t, fe>& coeffs, fe c0 = 0) {
    Circuit c;
    c.n_inputs = arity;
    int acc = c.push(Op::CONST, -1, -1, c0);
    for (auto& [i, coef] : coeffs) {
        if (i >= arity) throw std::invalid_argument("linear_form_circuit: index out of range");
        int t = c.push(Op::CONST, -1, -1, coef);
        t = c.push(Op::MUL, t, (int)i);
        acc = c.push(Op::ADD, acc, t);
    }
    c.output = acc;
    return c;
}

// Picks out alpha[i].
inline Circuit select_circuit(std::size_t arity, std::size_t i) {
    Circuit c;
    c.n_inputs = arity;
    c.output = c.push(Op::ADD, (int)i, c.push(Op::CONST, -1, -1, 0));
    return c;
}

} // namespace pcpd
