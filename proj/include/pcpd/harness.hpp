#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcpd/cascade.hpp"
#include "pcpd/compose.hpp"
#include "pcpd/rm.hpp"

namespace pcpd {

using ordered_json = nlohmann::ordered_json;

// Monte-Carlo slack: a soundness experiment passes iff estimate <= bound + 3 sigma.
inline double three_sigma(std::size_t trials) { return 3.0 * std::sqrt(0.25 / (double)trials); }

inline std::pair<double, double> wilson_interval(std::size_t hits, std::size_t n, double z = 1.96) {
    if (n == 0) return {0.0, 1.0};
    double ph = (double)hits / (double)n, z2 = z * z;
    double denom = 1.0 + z2 / (double)n;
    double centre = ph + z2 / (2.0 * (double)n);
    double spread = z * std::sqrt(ph * (1.0 - ph) / (double)n + z2 / (4.0 * (double)n * (double)n));
    return {(centre - spread) / denom, (centre + spread) / denom};
}

inline std::uint64_t query_hash(const Query& q) {
    std::uint64_t h = Rng::mix((std::uint64_t)q.tag);
    for (auto& b : q.blocks) {
        h = Rng::mix(h ^ 0x51ed2701);
        for (fe v : b) h = Rng::mix(h ^ v);
    }
    return h;
}

// Adversary answering every query with a fresh uniform value, memoized so a
// repeated query gets a consistent answer.
class RandomTableProvers : public Provers {
  public:
    RandomTableProvers(const PrimeField& F, std::size_t answer_size, std::uint64_t seed)
        : F_(F.p()), s_(answer_size), seed_(seed) {}

    vec answer(std::size_t prover, const Query& q) override {
        auto key = std::make_pair(prover, q);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Rng rng(Rng::mix(seed_ ^ Rng::mix(prover)) ^ query_hash(q));
        vec v = F_.random_vec(rng, prover == 0 ? s_ : 1);
        return memo_.emplace(std::move(key), std::move(v)).first->second;
    }

  private:
    PrimeField F_;
    std::size_t s_;
    std::uint64_t seed_;
    std::map<std::pair<std::size_t, Query>, vec> memo_;
};

// Honest provers with a rho-fraction of the small provers' answers shifted;
// the corruption pattern is a deterministic function of the query.
class CorruptedProvers : public Provers {
  public:
    CorruptedProvers(const PrimeField& F, std::shared_ptr<Provers> base, double rho,
                     std::uint64_t seed)
        : F_(F.p()), base_(std::move(base)), rho_(rho), seed_(seed) {}

    vec answer(std::size_t prover, const Query& q) override {
        vec v = base_->answer(prover, q);
        if (prover == 0) return v;
        double u = (double)(Rng::mix(seed_ ^ query_hash(q) ^ Rng::mix(prover)) >> 11) * 0x1.0p-53;
        if (u < rho_) v[0] = F_.add(v[0], 1);
        return v;
    }

  private:
    PrimeField F_;
    std::shared_ptr<Provers> base_;
    double rho_;
    std::uint64_t seed_;
};

struct Envelope {
    std::string label;
    double bound = 1.0;
};

struct ExperimentReport {
    std::string experiment;    // completeness | soundness
    std::string decoder;
    fe field = 0;
    std::string adversary;     // "honest" for completeness
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t accepted = 0;
    double accept_rate = 0;
    double wilson_low = 0, wilson_high = 0;
    double output_correct_rate = -1;   // completeness only; -1 = not measured
    std::map<std::string, std::size_t> first_fail;
    Envelope envelope;
    bool pass = false;
    ordered_json params;
};

inline ordered_json spec_params_json(const DecoderSpec& spec) {
    ordered_json j;
    j["provers"] = spec.provers();
    j["answers"] = spec.answers();
    j["answer_size"] = spec.answer_size();
    j["witness_len"] = spec.witness_len();
    j["randomness_bits"] = spec.randomness_bits();
    j["index_bits"] = spec.index_bits();
    j["delta"] = spec.delta();
    j["eta"] = spec.eta();
    if (auto* rm = dynamic_cast<const RmSpec*>(&spec)) {
        const RmParams& P = rm->params();
        j["rm"] = ordered_json{{"h", P.h},           {"m1", P.m1}, {"m2", P.m2},
                               {"m3", P.m3},         {"m4", P.m4}, {"t", P.t},
                               {"d", P.d},           {"M", P.M},   {"T_bundle", P.T_bundle},
                               {"T_constraints", P.T_constraints}};
    }
    return j;
}

inline ExperimentReport run_completeness(const PrimeField& F, const DecoderSpec& spec,
                                         const vec& witness, std::size_t trials,
                                         std::uint64_t seed) {
    ExperimentReport rep;
    rep.experiment = "completeness";
    rep.decoder = spec.name();
    rep.field = F.p();
    rep.adversary = "honest";
    rep.trials = trials;
    rep.seed = seed;
    rep.params = spec_params_json(spec);
    auto provers = spec.honest_provers(F, witness);
    Rng rng(seed);
    std::size_t correct = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        vec j = spec.sample_index(rng);
        std::uint64_t R = rng.next_u64();
        RoundResult res = run_round(F, spec, *provers, R, j);
        if (res.accept) {
            ++rep.accepted;
            if (res.outputs == spec.expected_outputs(F, witness, j)) ++correct;
        } else {
            ++rep.first_fail[res.first_fail];
        }
    }
    rep.accept_rate = (double)rep.accepted / (double)trials;
    rep.output_correct_rate = rep.accepted ? (double)correct / (double)rep.accepted : 0.0;
    std::tie(rep.wilson_low, rep.wilson_high) = wilson_interval(rep.accepted, trials);
    rep.envelope = {"acceptance == 1 and output correctness == 1", 1.0};
    rep.pass = rep.accepted == trials && correct == trials;
    return rep;
}

inline ExperimentReport run_soundness(const PrimeField& F, const DecoderSpec& spec,
                                      Provers& adversary, const std::string& adversary_name,
                                      const Envelope& env, std::size_t trials,
                                      std::uint64_t seed) {
    ExperimentReport rep;
    rep.experiment = "soundness";
    rep.decoder = spec.name();
    rep.field = F.p();
    rep.adversary = adversary_name;
    rep.trials = trials;
    rep.seed = seed;
    rep.params = spec_params_json(spec);
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        vec j = spec.sample_index(rng);
        std::uint64_t R = rng.next_u64();
        RoundResult res = run_round(F, spec, adversary, R, j);
        if (res.accept) ++rep.accepted;
        else ++rep.first_fail[res.first_fail];
    }
    rep.accept_rate = (double)rep.accepted / (double)trials;
    std::tie(rep.wilson_low, rep.wilson_high) = wilson_interval(rep.accepted, trials);
    rep.envelope = env;
    rep.pass = rep.accept_rate <= env.bound;
    return rep;
}

// First boolean assignment violating the constraint circuit (for the
// honest-encoding-of-an-invalid-witness adversary family).
inline vec find_invalid_assignment(const PrimeField& F, const Circuit& phi) {
    if (phi.n_inputs > 20) throw std::length_error("find_invalid_assignment: too many inputs");
    for (std::uint64_t mask = 0; mask < (1ull << phi.n_inputs); ++mask) {
        vec a(phi.n_inputs);
        for (std::size_t i = 0; i < phi.n_inputs; ++i) a[i] = (mask >> i) & 1;
        if (!circuit_satisfied(F, phi, a)) return a;
    }
    throw std::invalid_argument("find_invalid_assignment: circuit is a tautology");
}

// Named adversary menu; returns the provers plus the envelope they are
// benchmarked against.
inline std::pair<std::shared_ptr<Provers>, Envelope>
make_adversary(const PrimeField& F, const DecoderSpec& spec, const std::string& name,
               const vec& witness, std::size_t trials, std::uint64_t seed, double rho = 0.5) {
    double p = (double)F.p();
    double s3 = three_sigma(trials);
    if (name == "random-tables")
        return {std::make_shared<RandomTableProvers>(F, spec.answer_size(), seed ^ 0xadc0ffee),
                {"4/|F| + 3sigma", 4.0 / p + s3}};
    if (name == "corrupted-honest")
        return {std::make_shared<CorruptedProvers>(F, spec.honest_provers(F, witness), rho,
                                                   seed ^ 0xc0de),
                {"1 - rho(1 - 1/|F|) + 3sigma", 1.0 - rho * (1.0 - 1.0 / p) + s3}};
    if (name == "invalid-witness" || name == "low-degree-wrong-g") {
        const Circuit* phi = nullptr;
        if (auto* qh = dynamic_cast<const QhSpec*>(&spec)) phi = &qh->system().Phi;
        if (auto* rm = dynamic_cast<const RmSpec*>(&spec)) phi = &rm->system().Phi;
        if (!phi) throw std::invalid_argument("adversary '" + name + "' needs qh or rm decoder");
        vec bad = find_invalid_assignment(F, *phi);
        Envelope env;
        if (auto* rm = dynamic_cast<const RmSpec*>(&spec)) {
            const RmParams& P = rm->params();
            env = {"2(m3 d/|F| + T/|F|) + 3sigma",
                   2.0 * ((double)(P.m3 * P.d) / p + (double)P.T_constraints / p) + s3};
        } else {
            env = {"4/|F| + 3sigma", 4.0 / p + s3};
        }
        return {spec.honest_provers(F, bad), env};
    }
    if (name == "non-multiplicative-linear-B") {
        auto* qh = dynamic_cast<const QhSpec*>(&spec);
        if (!qh) throw std::invalid_argument("adversary needs the qh decoder");
        vec pi = assemble_pi(F, qh->system(), witness);
        vec w = qh_string(F, pi);
        w[qh->system().num_vars] = F.add(w[qh->system().num_vars], 1);   // break one tensor entry
        return {std::make_shared<QhHonestProvers>(F, std::move(w)),
                {"4/|F| + 3sigma", 4.0 / p + s3}};
    }
    if (name == "inconsistent-inner-C") {
        auto* comp = dynamic_cast<const ComposedSpec*>(&spec);
        if (!comp) throw std::invalid_argument("adversary needs a composed decoder");
        return {comp->inconsistent_cstar_provers(F, witness),
                {"delta_out + delta_in + eta_in + 3sigma", comp->delta() + s3}};
    }
    throw std::invalid_argument("unknown adversary '" + name + "'");
}

// Naive sequential repetition viewed as a plain PCP: run k independent
// rounds, accept iff all accept.  Randomness multiplies by k; no decoding.
struct RepeatedPcp {
    const DecoderSpec& spec;
    std::size_t k;

    double randomness_bits() const { return (double)k * spec.randomness_bits(); }

    bool run(const PrimeField& F, Provers& provers, Rng& rng) const {
        for (std::size_t i = 0; i < k; ++i) {
            vec j = spec.sample_index(rng);
            if (!run_round(F, spec, provers, rng.next_u64(), j).accept) return false;
        }
        return true;
    }
};

inline ExperimentReport run_repeated(const PrimeField& F, const DecoderSpec& spec, std::size_t k,
                                     Provers& provers, const std::string& adversary_name,
                                     const Envelope& env, std::size_t trials, std::uint64_t seed) {
    RepeatedPcp rp{spec, k};
    ExperimentReport rep;
    rep.experiment = "repeat";
    rep.decoder = spec.name();
    rep.field = F.p();
    rep.adversary = adversary_name;
    rep.trials = trials;
    rep.seed = seed;
    rep.params = spec_params_json(spec);
    rep.params["repetitions"] = k;
    rep.params["repeated_randomness_bits"] = rp.randomness_bits();
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t)
        if (rp.run(F, provers, rng)) ++rep.accepted;
    rep.accept_rate = (double)rep.accepted / (double)trials;
    std::tie(rep.wilson_low, rep.wilson_high) = wilson_interval(rep.accepted, trials);
    rep.envelope = env;
    rep.pass = rep.accept_rate <= env.bound;
    return rep;
}

// ---- serialization -------------------------------------------------------
// Reports are deterministic functions of (config, seed): no wall-clock or
// host data is ever serialized, so reruns are byte-identical.

inline ordered_json report_json(const ExperimentReport& r) {
    ordered_json j;
    j["experiment"] = r.experiment;
    j["decoder"] = r.decoder;
    j["field"] = r.field;
    j["adversary"] = r.adversary;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["accepted"] = r.accepted;
    j["accept_rate"] = r.accept_rate;
    j["wilson"] = ordered_json{{"low", r.wilson_low}, {"high", r.wilson_high}};
    if (r.output_correct_rate >= 0) j["output_correct_rate"] = r.output_correct_rate;
    j["first_fail"] = ordered_json::object();
    for (auto& [k, v] : r.first_fail) j["first_fail"][k] = v;
    j["envelope"] = ordered_json{{"label", r.envelope.label}, {"bound", r.envelope.bound}};
    j["pass"] = r.pass;
    j["params"] = r.params;
    return j;
}

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline std::string report_csv(const ExperimentReport& r) {
    std::ostringstream os;
    os << "experiment,decoder,field,adversary,trials,seed,accepted,accept_rate,"
          "wilson_low,wilson_high,output_correct_rate,envelope_label,envelope_bound,pass\n";
    os << r.experiment << ',' << r.decoder << ',' << r.field << ',' << r.adversary << ','
       << r.trials << ',' << r.seed << ',' << r.accepted << ',' << fmt_double(r.accept_rate) << ','
       << fmt_double(r.wilson_low) << ',' << fmt_double(r.wilson_high) << ','
       << fmt_double(r.output_correct_rate) << ',' << '"' << r.envelope.label << '"' << ','
       << fmt_double(r.envelope.bound) << ',' << (r.pass ? "true" : "false") << '\n';
    return os.str();
}

inline ordered_json cascade_json(const CascadeResult& c) {
    ordered_json j;
    j["L"] = c.L;
    j["eps"] = c.eps;
    j["eps_prime"] = c.eps_prime;
    j["c"] = c.c;
    j["field_bits"] = c.field_bits;
    j["i_star"] = c.i_star;
    j["summary"] = ordered_json::object();
    for (auto& [k, v] : c.summary) j["summary"][k] = v;
    j["rows"] = ordered_json::array();
    for (auto& r : c.rows)
        j["rows"].push_back(ordered_json{{"stage", r.stage},
                                         {"lg_h", r.lg_h},
                                         {"m", r.m},
                                         {"lg_n", r.lg_n},
                                         {"R", r.R},
                                         {"lg_s", r.lg_s},
                                         {"lg_delta", r.lg_delta},
                                         {"lg_eta", r.lg_eta},
                                         {"answers", r.answers},
                                         {"cum_R", r.cum_R},
                                         {"cum_lg_delta", r.cum_lg_delta},
                                         {"cum_provers", r.cum_provers},
                                         {"cum_answers", r.cum_answers}});
    return j;
}

inline std::string cascade_csv(const CascadeResult& c) {
    std::ostringstream os;
    os << "stage,lg_h,m,lg_n,R,lg_s,lg_delta,lg_eta,answers,cum_R,cum_lg_delta,cum_provers,"
          "cum_answers\n";
    for (auto& r : c.rows)
        os << r.stage << ',' << fmt_double(r.lg_h) << ',' << fmt_double(r.m) << ','
           << fmt_double(r.lg_n) << ',' << fmt_double(r.R) << ',' << fmt_double(r.lg_s) << ','
           << fmt_double(r.lg_delta) << ',' << fmt_double(r.lg_eta) << ',' << r.answers << ','
           << fmt_double(r.cum_R) << ',' << fmt_double(r.cum_lg_delta) << ',' << r.cum_provers
           << ',' << r.cum_answers << '\n';
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline void emit_report(const ExperimentReport& r, const std::string& format,
                        const std::string& path) {
    std::string body = format == "csv" ? report_csv(r) : report_json(r).dump(2) + "\n";
    if (path.empty() || path == "-") {
        fputs(body.c_str(), stdout);
    } else {
        write_file(path, body);
    }
}

} // namespace pcpd
