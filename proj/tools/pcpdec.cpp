// pcpdec: experiment driver for the decoding-verifier library.
//
//   pcpdec completeness --circuit circuits/and.ckt --field 101 --dpcp qh
//   pcpdec soundness    --circuit circuits/and.ckt --adversary invalid-witness
//   pcpdec cascade      --L 1048576 --eps 0.25
//   pcpdec repeat       --circuit circuits/and.ckt --k 2 --adversary invalid-witness
//
// Exit code is 0 iff every declared envelope passes.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "pcpd/harness.hpp"

using namespace pcpd;

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read circuit file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Decoder recipes: "qh", "rm", or a chain like "qh*qh" / "rm*qh" where every
// inner stage is the quadratic-encoding decoder.
static std::shared_ptr<DecoderSpec> build_decoder(const PrimeField& F, std::string recipe,
                                                  const Circuit& phi, std::size_t h) {
    for (auto& ch : recipe)
        if (ch == '-') ch = '*';
    std::vector<std::string> parts;
    std::istringstream is(recipe);
    for (std::string tok; std::getline(is, tok, '*');) parts.push_back(tok);
    if (parts.empty()) throw std::invalid_argument("empty decoder recipe");
    std::shared_ptr<DecoderSpec> spec;
    if (parts[0] == "qh") spec = std::make_shared<QhSpec>(F, phi, std::vector<Circuit>{});
    else if (parts[0] == "rm") spec = std::make_shared<RmSpec>(F, phi, std::vector<Circuit>{}, h);
    else throw std::invalid_argument("unknown decoder '" + parts[0] + "'");
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i] != "qh")
            throw std::invalid_argument("inner decoder must be 'qh', got '" + parts[i] + "'");
        spec = std::make_shared<ComposedSpec>(F, spec, qh_factory());
    }
    return spec;
}

int main(int argc, char** argv) {
    CLI::App app{"decoding-verifier experiment driver"};
    app.require_subcommand(1);

    std::string circuit_path, dpcp = "qh", recipe, adversary, out = "-", format = "json";
    std::uint64_t field = 101, seed = 1;
    std::size_t trials = 1000, h = 2, k = 2;
    double rho = 0.5, L = 1 << 20, eps = 0.25, cconst = 1.0, field_bits = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_circuit) {
        if (needs_circuit) cmd->add_option("--circuit", circuit_path, "circuit file")->required();
        cmd->add_option("--field", field, "prime field modulus");
        cmd->add_option("--dpcp", dpcp, "decoder: qh | rm");
        cmd->add_option("--recipe", recipe, "composition recipe, e.g. qh*qh or rm*qh");
        cmd->add_option("--trials", trials, "number of sampled rounds");
        cmd->add_option("--seed", seed, "experiment seed");
        cmd->add_option("--subcube", h, "evaluation-set size h for the rm decoder");
        cmd->add_option("--out", out, "output path ('-' for stdout)");
        cmd->add_option("--format", format, "json | csv");
    };

    auto* c_cmd = app.add_subcommand("completeness", "honest-proof acceptance sweep");
    add_common(c_cmd, true);

    auto* s_cmd = app.add_subcommand("soundness", "adversarial Monte-Carlo run");
    add_common(s_cmd, true);
    s_cmd->add_option("--adversary", adversary, "adversary name")->required();
    s_cmd->add_option("--rho", rho, "corruption rate for corrupted-honest");

    auto* r_cmd = app.add_subcommand("repeat", "naive sequential repetition");
    add_common(r_cmd, true);
    r_cmd->add_option("--adversary", adversary, "adversary name (default: honest)");
    r_cmd->add_option("--rho", rho, "corruption rate for corrupted-honest");
    r_cmd->add_option("--k", k, "number of repetitions");

    auto* k_cmd = app.add_subcommand("cascade", "composition-tower parameter calculator");
    k_cmd->add_option("--L", L, "lg of the instance size");
    k_cmd->add_option("--eps", eps, "cascade exponent in (0,1)");
    k_cmd->add_option("--c", cconst, "randomness constant");
    k_cmd->add_option("--field-bits", field_bits, "lg |F| (default L^(1-eps))");
    k_cmd->add_option("--out", out, "output path ('-' for stdout)");
    k_cmd->add_option("--format", format, "json | csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (k_cmd->parsed()) {
            CascadeResult res = cascade_params(L, eps, cconst, field_bits);
            std::string body =
                format == "csv" ? cascade_csv(res) : cascade_json(res).dump(2) + "\n";
            if (out.empty() || out == "-") std::cout << body;
            else write_file(out, body);
            return 0;
        }

        auto t0 = std::chrono::steady_clock::now();
        PrimeField F(field);
        Circuit parsed = parse_circuit(slurp(circuit_path));
        Circuit phi = parsed.boolean ? arithmetize(parsed) : parsed;
        auto spec = build_decoder(F, recipe.empty() ? dpcp : recipe, phi, h);
        auto witness = find_witness(F, phi);
        if (!witness) throw std::invalid_argument("circuit is unsatisfiable");

        ExperimentReport rep;
        if (c_cmd->parsed()) {
            rep = run_completeness(F, *spec, *witness, trials, seed);
        } else if (s_cmd->parsed()) {
            auto [adv, env] = make_adversary(F, *spec, adversary, *witness, trials, seed, rho);
            rep = run_soundness(F, *spec, *adv, adversary, env, trials, seed);
        } else {
            std::shared_ptr<Provers> provers;
            Envelope env;
            std::string name = adversary.empty() ? "honest" : adversary;
            if (adversary.empty()) {
                provers = spec->honest_provers(F, *witness);
                env = {"acceptance == 1", 1.0};
            } else {
                auto [adv, base] = make_adversary(F, *spec, adversary, *witness, trials, seed, rho);
                provers = adv;
                double b = std::min(1.0, std::pow(base.bound, (double)k)) + three_sigma(trials);
                env = {"(" + base.label + ")^k", b};
            }
            rep = run_repeated(F, *spec, k, *provers, name, env, trials, seed);
        }
        emit_report(rep, format, out);
        // timing goes to stderr only: serialized reports stay byte-identical
        std::chrono::duration<double> secs = std::chrono::steady_clock::now() - t0;
        std::cerr << "elapsed: " << secs.count() << "s\n";
        return rep.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
