#include <doctest.h>

#include "pcpd/harness.hpp"

using namespace pcpd;

static Circuit and_circuit() {
    return arithmetize(parse_circuit("inputs 2\ng1 = AND x1 x2\noutput g1\n"));
}

TEST_CASE("rref basis and span coordinates") {
    PrimeField F(101);
    std::vector<vec> gens{{2, 0, 4, 0}, {0, 3, 0, 6}, {2, 3, 4, 6}};   // rank 2
    Rref b = rref_basis(F, gens);
    REQUIRE(b.rows.size() == 2);
    CHECK(b.pivots == std::vector<std::size_t>{0, 1});
    for (std::size_t i = 0; i < b.rows.size(); ++i)
        for (std::size_t k = 0; k < b.rows.size(); ++k)
            CHECK(b.rows[i][b.pivots[k]] == (i == k ? 1u : 0u));
    // w = 1*row0 + 5*row1 has coordinates (w[p0], w[p1]) = (1, 5)
    vec w(4, 0);
    for (std::size_t k = 0; k < 4; ++k)
        w[k] = F.add(b.rows[0][k], F.mul(5, b.rows[1][k]));
    CHECK(span_coords(F, b, w) == vec{1, 5});
    CHECK_THROWS_AS(span_coords(F, b, vec{0, 0, 1, 0}), std::logic_error);
}

TEST_CASE("qh decoder parameter accounting") {
    PrimeField F(101);
    QhSpec spec(F, and_circuit(), {});
    CHECK(spec.name() == "qh");
    CHECK(spec.provers() == 2);
    CHECK(spec.answers() == 1);
    CHECK(spec.answer_size() == 8);
    CHECK(spec.witness_len() == 2);
    std::size_t m = spec.system().num_vars, D = m + m * m;
    CHECK(spec.randomness_bits() ==
          doctest::Approx((1.0 + 2.0 * m + 3.0 * D) * std::log2(101.0)));
    CHECK(spec.index_bits() == doctest::Approx(6.0 * std::log2(101.0)));
    CHECK(spec.delta() == doctest::Approx(std::pow(101.0, -0.1)));
    CHECK(spec.eta() == doctest::Approx(2.0 * std::cbrt(4.0 / 101.0)));
}

TEST_CASE("qh round plan is a deterministic function of (R, j)") {
    PrimeField F(101);
    QhSpec spec(F, and_circuit(), {});
    Rng rng(12);
    vec j = spec.sample_index(rng);
    RoundPlan a = spec.round(F, 77, j), b = spec.round(F, 77, j);
    REQUIRE(a.queries.size() == 2);
    CHECK(a.queries[0] == b.queries[0]);
    CHECK(a.queries[1] == b.queries[1]);
    CHECK(a.queries[0].blocks.size() == spec.answer_size());
}

TEST_CASE("qh completeness: honest provers always accepted and decoded") {
    PrimeField F(101);
    QhSpec spec(F, and_circuit(), {});
    ExperimentReport rep = run_completeness(F, spec, {1, 1}, 200, 31);
    CHECK(rep.accepted == 200);
    CHECK(rep.output_correct_rate == 1.0);
    CHECK(rep.pass);
}

TEST_CASE("qh honest big prover answers are linear in the query rows") {
    PrimeField F(101);
    QhSpec spec(F, and_circuit(), {});
    auto provers = spec.honest_provers(F, {1, 1});
    Rng rng(13);
    vec j = spec.sample_index(rng);
    RoundPlan plan = spec.round(F, rng.next_u64(), j);
    const vec& r0 = plan.queries[0].blocks[0];
    const vec& r1 = plan.queries[0].blocks[1];
    vec sum(r0.size());
    for (std::size_t i = 0; i < r0.size(); ++i) sum[i] = F.add(r0[i], r1[i]);
    fe a0 = provers->answer(1, Query{0, {r0}})[0];
    fe a1 = provers->answer(1, Query{0, {r1}})[0];
    fe as = provers->answer(1, Query{0, {sum}})[0];
    CHECK(as == F.add(a0, a1));
}

TEST_CASE("qh soundness: invalid-witness adversary stays under the envelope") {
    PrimeField F(101);
    QhSpec spec(F, and_circuit(), {});
    auto [adv, env] = make_adversary(F, spec, "invalid-witness", {1, 1}, 2000, 17);
    ExperimentReport rep = run_soundness(F, spec, *adv, "invalid-witness", env, 2000, 17);
    CHECK(rep.pass);
    CHECK(rep.accept_rate < 0.1);
}

TEST_CASE("qh soundness: broken tensor entry caught by the multiplicativity test") {
    PrimeField F(101);
    QhSpec spec(F, and_circuit(), {});
    auto [adv, env] = make_adversary(F, spec, "non-multiplicative-linear-B", {1, 1}, 2000, 19);
    ExperimentReport rep =
        run_soundness(F, spec, *adv, "non-multiplicative-linear-B", env, 2000, 19);
    CHECK(rep.pass);
    CHECK(rep.accept_rate < 0.1);
    CHECK(rep.first_fail.size() > 0);
}

TEST_CASE("qh soundness: random tables are almost never consistent") {
    PrimeField F(101);
    QhSpec spec(F, and_circuit(), {});
    auto [adv, env] = make_adversary(F, spec, "random-tables", {1, 1}, 1000, 23);
    ExperimentReport rep = run_soundness(F, spec, *adv, "random-tables", env, 1000, 23);
    CHECK(rep.pass);
}
