#include <doctest.h>

#include "pcpd/harness.hpp"

using namespace pcpd;

static Circuit and_circuit() {
    return arithmetize(parse_circuit("inputs 2\ng1 = AND x1 x2\noutput g1\n"));
}

TEST_CASE("summing a variable over the evaluation set") {
    PrimeField F(101);
    vec H{0, 1, 2};
    Rng rng(1);
    MultiPoly f = interpolate_grid(F, H, 2, [&](std::size_t) { return F.random(rng); });
    MultiPoly s = poly_sum_var(F, f, 1, H);
    CHECK(s.degree_in(1) == 0);
    for (int i = 0; i < 20; ++i) {
        fe x = F.random(rng);
        fe brute = 0;
        for (fe c : H) brute = F.add(brute, f.eval(F, {x, c}));
        CHECK(s.eval(F, {x, 0}) == brute);
    }
}

TEST_CASE("bundling and unbundling round-trip") {
    PrimeField F(101);
    vec H{0, 1};
    Rng rng(2);
    std::vector<MultiPoly> qs;
    for (int i = 0; i < 3; ++i)
        qs.push_back(interpolate_grid(F, H, 2, [&](std::size_t) { return F.random(rng); }));
    std::size_t t = 2;   // h^t = 4 >= 3+1
    MultiPoly g4 = bundle_polys(F, H, t, qs);
    for (std::size_t i = 1; i <= qs.size(); ++i)
        for (int rep = 0; rep < 20; ++rep) {
            vec x = F.random_vec(rng, 2);
            CHECK(unbundle_at(F, g4, H, t, i, x) == qs[i - 1].eval(F, x));
        }
    CHECK_THROWS_AS(unbundle_at(F, g4, H, 1, 2, {0, 0}), std::invalid_argument);
}

TEST_CASE("rm decoder structural parameters") {
    PrimeField F(401);
    RmSpec spec(F, and_circuit(), {}, 2);
    const RmParams& P = spec.params();
    CHECK(P.h == 2);
    CHECK(P.m1 == 1);                              // n = 2 = 2^1
    CHECK(P.n1 == spec.system().num_vars + 1);
    CHECK(((P.n1 - 1) & P.n1) == 0);               // n1 a power of 2
    CHECK(P.m3 == 2 * P.m2);
    CHECK(P.T_bundle == P.m3 * 401 + 1);
    CHECK(P.m4 == P.t + P.m3);
    CHECK(P.d == P.h * P.t + 2 * P.h * P.m3);
    CHECK(P.M == (P.h + 1) * P.m3 + 5);
    CHECK(spec.answer_size() == spec.system().ell + 1 + P.M + 1);
    CHECK_THROWS_AS(RmSpec(F, and_circuit(), {}, 1), std::invalid_argument);
}

TEST_CASE("constraint extension tables reproduce the quadratic constraints") {
    PrimeField F(401);
    RmSpec spec(F, and_circuit(), {}, 2);
    const QuadraticSystem& sys = spec.system();
    const RmParams& P = spec.params();
    vec z0(P.m2, (fe)(P.h - 1));
    auto grid = [&](std::size_t pos) { return base_digits(pos, P.h, P.m2); };
    for (std::size_t k = 0; k < sys.constraints.size(); ++k) {
        const Quad& q = sys.constraints[k];
        const MultiPoly& c = spec.constraint_extension(k);
        vec zz = z0;
        zz.insert(zz.end(), z0.begin(), z0.end());
        CHECK(c.eval(F, zz) == q.c0);
        for (auto& [i, coef] : q.lin) {
            vec pt = z0;
            vec gi = grid(i);
            pt.insert(pt.end(), gi.begin(), gi.end());
            CHECK(c.eval(F, pt) == coef);
        }
        for (auto& [ij, coef] : q.quad) {
            vec pt = grid(ij.first);
            vec gj = grid(ij.second);
            pt.insert(pt.end(), gj.begin(), gj.end());
            CHECK(c.eval(F, pt) == coef);
        }
    }
}

TEST_CASE("combined constraint extension sums to zero against an honest bundle") {
    PrimeField F(401);
    RmSpec spec(F, and_circuit(), {}, 2);
    const RmParams& P = spec.params();
    vec pi = assemble_pi(F, spec.system(), {1, 1});
    RmBundleProvers bundle(F, spec, pi);
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        fe r = F.random(rng);
        MultiPoly ph = spec.phat(F, r);
        fe total = 0;
        for (std::size_t idx = 0; idx < (std::size_t)1 << P.m3; ++idx) {
            vec x = base_digits(idx, 2, P.m3);
            total = F.add(total, F.mul(ph.eval(F, x), bundle.g3().eval(F, x)));
        }
        CHECK(total == 0);
    }
}

TEST_CASE("embedding chain through the bundle") {
    PrimeField F(401);
    RmSpec spec(F, and_circuit(), {}, 2);
    const RmParams& P = spec.params();
    vec witness{1, 1};
    vec pi = assemble_pi(F, spec.system(), witness);
    RmBundleProvers bundle(F, spec, pi);
    vec z0(P.m2, 1);
    // g2 at grid points reads pi o 1
    for (std::size_t pos = 1; pos <= pi.size() + 1; ++pos) {
        fe expect = pos <= pi.size() ? pi[pos - 1] : 1;
        CHECK(bundle.g2().eval(F, spec.grid_point(pos)) == expect);
    }
    Rng rng(4);
    for (int rep = 0; rep < 100; ++rep) {
        // g4 at the g3 anchor equals g3; g3 on (z0, x) equals g2
        vec x = F.random_vec(rng, P.m3);
        CHECK(bundle.g4(spec.bundle_point(1, x)) == bundle.g3().eval(F, x));
        vec zx = z0;
        vec x2 = F.random_vec(rng, P.m2);
        zx.insert(zx.end(), x2.begin(), x2.end());
        CHECK(bundle.g3().eval(F, zx) == bundle.g2().eval(F, x2));
        // g1(x) = g2(x, 0): the witness LDE is the restriction of g2
        vec x1 = F.random_vec(rng, P.m1);
        vec padded = x1;
        padded.resize(P.m2, 0);
        CHECK(spec.encode_symbol(F, witness, x1) == bundle.g2().eval(F, padded));
    }
}

TEST_CASE("bundle answers at non-anchor points interpolate the components") {
    PrimeField F(401);
    RmSpec spec(F, and_circuit(), {}, 2);
    const RmParams& P = spec.params();
    vec pi = assemble_pi(F, spec.system(), {1, 1});
    RmBundleProvers bundle(F, spec, pi);
    Rng rng(5);
    for (int rep = 0; rep < 3; ++rep) {
        vec y = F.random_vec(rng, P.t);
        vec x = F.random_vec(rng, P.m3);
        // brute-force Lagrange sum over all bundled components
        fe expect = 0;
        for (std::size_t idx = 1; idx <= P.T_bundle; ++idx) {
            vec digs = base_digits(idx, P.h, P.t);
            fe w = 1;
            for (std::size_t k = 0; k < P.t; ++k) {
                fe num = 1, den = 1;
                for (fe c = 0; c < P.h; ++c)
                    if (c != digs[k]) {
                        num = F.mul(num, F.sub(y[k], c));
                        den = F.mul(den, F.sub(digs[k], c));
                    }
                w = F.mul(w, F.mul(num, F.inv(den)));
            }
            if (w == 0) continue;
            fe q = idx == 1 ? bundle.g3().eval(F, x)
                            : bundle.partial_sum((fe)((idx - 2) / P.m3),
                                                 (idx - 2) % P.m3 + 1, x);
            expect = F.add(expect, F.mul(w, q));
        }
        vec yx = y;
        yx.insert(yx.end(), x.begin(), x.end());
        CHECK(bundle.g4(yx) == expect);
    }
}

TEST_CASE("partial sums telescope over the evaluation set") {
    PrimeField F(401);
    RmSpec spec(F, and_circuit(), {}, 2);
    const RmParams& P = spec.params();
    vec pi = assemble_pi(F, spec.system(), {1, 1});
    RmBundleProvers bundle(F, spec, pi);
    Rng rng(6);
    fe r = F.random(rng);
    for (std::size_t i = P.m3; i >= 2; --i) {
        vec prefix = F.random_vec(rng, i - 1);
        vec lhs_pt = prefix;
        lhs_pt.resize(P.m3, 0);
        fe rhs = 0;
        for (fe c = 0; c < P.h; ++c) {
            vec q = prefix;
            q.push_back(c);
            q.resize(P.m3, 0);
            rhs = F.add(rhs, bundle.partial_sum(r, i, q));
        }
        CHECK(bundle.partial_sum(r, i - 1, lhs_pt) == rhs);
    }
    fe zero = 0;
    for (fe c = 0; c < P.h; ++c) {
        vec q{c};
        q.resize(P.m3, 0);
        zero = F.add(zero, bundle.partial_sum(r, 1, q));
    }
    CHECK(zero == 0);
}

TEST_CASE("rm completeness and probe count") {
    PrimeField F(401);
    RmSpec spec(F, and_circuit(), {}, 2);
    Rng rng(7);
    vec j = spec.sample_index(rng);
    RoundPlan plan = spec.round(F, rng.next_u64(), j);
    const RmParams& P = spec.params();
    CHECK(plan.queries[0].blocks.size() == spec.system().ell + 1 + P.M + 3);
    ExperimentReport rep = run_completeness(F, spec, {1, 1}, 100, 41);
    CHECK(rep.accepted == 100);
    CHECK(rep.output_correct_rate == 1.0);
}

TEST_CASE("rm soundness: low degree proof of a wrong witness is caught") {
    PrimeField F(401);
    RmSpec spec(F, and_circuit(), {}, 2);
    auto [adv, env] = make_adversary(F, spec, "low-degree-wrong-g", {1, 1}, 500, 43);
    ExperimentReport rep = run_soundness(F, spec, *adv, "low-degree-wrong-g", env, 500, 43);
    CHECK(rep.pass);
    CHECK(rep.accept_rate < 0.1);
}
