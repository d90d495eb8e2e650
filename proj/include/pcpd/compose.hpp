#pragma once

#include <cmath>
#include <functional>

#include "pcpd/qh.hpp"

namespace pcpd {

// Builds an inner decoder for a concrete instance (Phi, F_1..F_ell).
using InnerFactory = std::function<std::shared_ptr<DecoderSpec>(
    const PrimeField&, const Circuit&, const std::vector<Circuit>&)>;

inline InnerFactory qh_factory() {
    return [](const PrimeField& F, const Circuit& Phi, const std::vector<Circuit>& Fs) {
        return std::static_pointer_cast<DecoderSpec>(std::make_shared<QhSpec>(F, Phi, Fs));
    };
}

// Composition of an outer decoder with an inner decoder family.  Each outer
// round (R_out, j_out) yields a local instance — the outer plan's predicate
// as the inner constraint circuit and the outer output/projection circuits as
// the inner functions — and the inner decoder is run on the outer big-prover
// answer as its witness.  Prover layout: the k_in inner provers (queries
// prefixed with (R_out, j_out)), then the consistency prover C* holding the
// inner encodings of the outer big-prover answers, then the k_out-1 outer
// small provers.  Check order: inner predicate, inner projections,
// consistency (decoded inner symbol vs C*), outer projections; the composed
// outputs are the inner decodings of the outer output functions.
class ComposedSpec : public DecoderSpec {
  public:
    ComposedSpec(const PrimeField& F, std::shared_ptr<const DecoderSpec> outer, InnerFactory factory)
        : p_(F.p()), outer_(std::move(outer)), factory_(std::move(factory)) {
        Rng probe(0);
        vec j0 = outer_->sample_index(probe);
        RoundPlan plan0 = outer_->round(F, 0, j0);
        rep_inner_ = factory_(F, plan0.predicate, inner_functions(*outer_, plan0));
        std::size_t s_out = outer_->answer_size();
        std::size_t n_in = rep_inner_->witness_len();
        if (s_out > n_in)
            throw std::invalid_argument("compose: precondition s_out <= n_in violated");
        if (n_in > rep_inner_->input_size())
            throw std::invalid_argument("compose: precondition n_in <= N_in violated");
        if (rep_inner_->answers() != outer_->provers() + outer_->answers())
            throw std::invalid_argument("compose: precondition l_in == k_out + l_out violated");
    }

    const DecoderSpec& outer() const { return *outer_; }
    const DecoderSpec& inner_representative() const { return *rep_inner_; }

    static std::vector<Circuit> inner_functions(const DecoderSpec& outer, const RoundPlan& plan) {
        std::vector<Circuit> fs = plan.outputs;
        fs.insert(fs.end(), plan.projections.begin(), plan.projections.end());
        (void)outer;
        return fs;
    }

    std::string name() const override { return outer_->name() + "*" + rep_inner_->name(); }
    std::size_t provers() const override { return outer_->provers() + rep_inner_->provers(); }
    std::size_t answers() const override { return outer_->answers(); }
    std::size_t answer_size() const override { return rep_inner_->answer_size(); }
    std::size_t witness_len() const override { return outer_->witness_len(); }
    std::size_t input_size() const override { return outer_->input_size(); }
    double randomness_bits() const override {
        return outer_->randomness_bits() + rep_inner_->randomness_bits() +
               std::ceil(rep_inner_->index_bits());
    }
    double index_bits() const override { return outer_->index_bits(); }
    double delta() const override {
        return outer_->delta() + rep_inner_->delta() + rep_inner_->eta();
    }
    double eta() const override { return outer_->eta(); }

    vec sample_index(Rng& rng) const override { return outer_->sample_index(rng); }

    fe encode_symbol(const PrimeField& F, const vec& witness, const vec& j) const override {
        return outer_->encode_symbol(F, witness, j);
    }

    RoundPlan round(const PrimeField& F, std::uint64_t R, const vec& j) const override {
        Rng rng(R);
        std::uint64_t R_out = rng.next_u64();
        std::uint64_t R_in = rng.next_u64();
        RoundPlan outp = outer_->round(F, R_out, j);
        auto inner = factory_(F, outp.predicate, inner_functions(*outer_, outp));
        vec j_in = inner->sample_index(rng);
        RoundPlan inp = inner->round(F, R_in, j_in);

        std::size_t l_out = outer_->answers(), k_out = outer_->provers();
        RoundPlan plan;
        plan.predicate = inp.predicate;
        for (std::size_t i = 0; i < inp.projections.size(); ++i) {
            plan.projections.push_back(inp.projections[i]);
            plan.proj_names.push_back(
                "inner:" + (i < inp.proj_names.size() ? inp.proj_names[i] : std::to_string(i + 1)));
        }
        plan.projections.push_back(inp.outputs.back());
        plan.proj_names.push_back("consistency");
        for (std::size_t i = 0; i + 1 < k_out; ++i) {
            plan.projections.push_back(inp.outputs[l_out + i]);
            plan.proj_names.push_back("outer-proj:" + std::to_string(i + 1));
        }
        plan.outputs.assign(inp.outputs.begin(), inp.outputs.begin() + l_out);

        std::vector<vec> prefix{vec{R_out}, j};
        for (auto& q : inp.queries) {
            std::vector<vec> blocks = prefix;
            blocks.insert(blocks.end(), q.blocks.begin(), q.blocks.end());
            plan.queries.push_back(Query{q.tag, std::move(blocks)});
        }
        {
            std::vector<vec> blocks = outp.queries[0].blocks;
            blocks.push_back(j_in);
            plan.queries.push_back(Query{outp.queries[0].tag, std::move(blocks)});
        }
        for (std::size_t i = 1; i < k_out; ++i) plan.queries.push_back(outp.queries[i]);
        return plan;
    }

    std::shared_ptr<Provers> honest_provers(const PrimeField& F, const vec& witness) const override;

    // C* answers from a perturbed copy of the outer big-prover answer; every
    // other prover stays honest (the targeted consistency-budget adversary).
    std::shared_ptr<Provers> inconsistent_cstar_provers(const PrimeField& F, const vec& witness,
                                                        fe offset = 1) const;

    vec expected_outputs(const PrimeField& F, const vec& witness, const vec& j) const override {
        return outer_->expected_outputs(F, witness, j);
    }

  private:
    fe p_;
    std::shared_ptr<const DecoderSpec> outer_;
    InnerFactory factory_;
    std::shared_ptr<DecoderSpec> rep_inner_;
};

class ComposedProvers : public Provers {
  public:
    ComposedProvers(const PrimeField& F, const ComposedSpec& spec,
                    std::shared_ptr<const DecoderSpec> outer, InnerFactory factory,
                    std::shared_ptr<Provers> outer_provers, std::shared_ptr<DecoderSpec> rep_inner,
                    fe cstar_offset)
        : F_(F.p()), spec_(spec), outer_(std::move(outer)), factory_(std::move(factory)),
          op_(std::move(outer_provers)), rep_inner_(std::move(rep_inner)),
          cstar_offset_(cstar_offset) {
        k_in_ = rep_inner_->provers();
    }

    vec answer(std::size_t prover, const Query& q) override {
        if (prover < k_in_) {
            std::uint64_t R_out = q.blocks[0][0];
            vec j_out = q.blocks[1];
            auto& inner = inner_for(R_out, j_out);
            Query iq{q.tag, {q.blocks.begin() + 2, q.blocks.end()}};
            return inner->answer(prover, iq);
        }
        if (prover == k_in_) {
            Query u{q.tag, {q.blocks.begin(), q.blocks.end() - 1}};
            vec alpha = op_->answer(0, u);
            if (cstar_offset_ != 0) alpha[0] = F_.add(alpha[0], cstar_offset_);
            return {rep_inner_->encode_symbol(F_, alpha, q.blocks.back())};
        }
        return op_->answer(prover - k_in_, q);
    }

  private:
    std::shared_ptr<Provers>& inner_for(std::uint64_t R_out, const vec& j_out) {
        auto key = std::make_pair(R_out, j_out);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        RoundPlan plan = outer_->round(F_, R_out, j_out);
        vec alpha = op_->answer(0, plan.queries[0]);
        auto inner = factory_(F_, plan.predicate, ComposedSpec::inner_functions(*outer_, plan));
        return memo_.emplace(key, inner->honest_provers(F_, alpha)).first->second;
    }

    PrimeField F_;
    const ComposedSpec& spec_;
    std::shared_ptr<const DecoderSpec> outer_;
    InnerFactory factory_;
    std::shared_ptr<Provers> op_;
    std::shared_ptr<DecoderSpec> rep_inner_;
    std::size_t k_in_;
    fe cstar_offset_;
    std::map<std::pair<std::uint64_t, vec>, std::shared_ptr<Provers>> memo_;
};

inline std::shared_ptr<Provers> ComposedSpec::honest_provers(const PrimeField& F,
                                                             const vec& witness) const {
    return std::make_shared<ComposedProvers>(F, *this, outer_, factory_,
                                             outer_->honest_provers(F, witness), rep_inner_, 0);
}

inline std::shared_ptr<Provers> ComposedSpec::inconsistent_cstar_provers(const PrimeField& F,
                                                                         const vec& witness,
                                                                         fe offset) const {
    return std::make_shared<ComposedProvers>(F, *this, outer_, factory_,
                                             outer_->honest_provers(F, witness), rep_inner_,
                                             offset);
}

} // namespace pcpd
