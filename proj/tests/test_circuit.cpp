#include <doctest.h>

#include "pcpd/decoder.hpp"
#include "pcpd/quadratic.hpp"

using namespace pcpd;

static const char* kOrText = R"(# OR via De Morgan
inputs 2
g1 = NOT x1
g2 = NOT x2
g3 = AND g1 g2
g4 = NOT g3
output g4
)";

TEST_CASE("circuit parsing and boolean evaluation") {
    PrimeField F(101);
    Circuit c = parse_circuit(kOrText);
    CHECK(c.boolean);
    CHECK(c.n_inputs == 2);
    CHECK(c.gates.size() == 4);
    REQUIRE(c.pins.size() == 1);
    CHECK(c.pins[0].second == 1);
    for (fe a = 0; a < 2; ++a)
        for (fe b = 0; b < 2; ++b) {
            CHECK(circuit_output(F, c, {a, b}) == (a | b));
            CHECK(circuit_satisfied(F, c, {a, b}) == ((a | b) == 1));
        }
}

TEST_CASE("default pin: last gate pinned to 1 when no output line") {
    Circuit c = parse_circuit("inputs 1\ng1 = NOT x1\n");
    REQUIRE(c.pins.size() == 1);
    CHECK(c.pins[0].first == 1);
    CHECK(c.pins[0].second == 1);
    CHECK(c.output == 1);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_circuit("inputs 1\ng2 = NOT x1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("inputs 1\ng1 = NOT x2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("g1 = NOT x1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("inputs 2\ng1 = AND x1 x2\ng2 = ADD g1 x1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("inputs 1\ng1 = XOR x1 x1\n"), std::invalid_argument);
}

TEST_CASE("arithmetization agrees with the boolean circuit on 0/1 inputs") {
    PrimeField F(101);
    Circuit b = parse_circuit(kOrText);
    Circuit a = arithmetize(b);
    CHECK(!a.boolean);
    for (std::uint64_t mask = 0; mask < 4; ++mask) {
        vec in{mask & 1, (mask >> 1) & 1};
        CHECK(circuit_output(F, a, in) == circuit_output(F, b, in));
        CHECK(circuit_satisfied(F, a, in) == circuit_satisfied(F, b, in));
    }
    CHECK_THROWS_AS(arithmetize(a), std::invalid_argument);
}

TEST_CASE("witness search") {
    PrimeField F(101);
    Circuit c = arithmetize(parse_circuit(kOrText));
    auto w = find_witness(F, c);
    REQUIRE(w.has_value());
    CHECK(circuit_satisfied(F, c, *w));
    Circuit none = arithmetize(parse_circuit("inputs 1\ng1 = AND x1 x1\ng2 = NOT g1\ng3 = AND g1 g2\noutput g3\n"));
    CHECK(!find_witness(F, none).has_value());
}

TEST_CASE("compiled quadratic system: layout and honest satisfaction") {
    PrimeField F(101);
    Circuit phi = arithmetize(parse_circuit(kOrText));
    Circuit f = select_circuit(2, 0);   // F_1(a) = a_1
    QuadraticSystem sys = v0_compile(F, phi, {f});
    CHECK(sys.n == 2);
    CHECK(sys.ell == 1);
    CHECK(sys.num_vars == 2 + 1 + phi.gates.size() + f.gates.size());
    // gate constraints + output pin + b-link
    CHECK(sys.constraints.size() == phi.gates.size() + f.gates.size() + 1 + 1);
    vec a{1, 0};
    vec pi = assemble_pi(F, sys, a);
    for (auto& q : sys.constraints) CHECK(quad_eval(F, q, pi) == 0);
    CHECK(pi[sys.b_base()] == circuit_output(F, f, a));
    auto bs = v0_witness(F, sys, a);
    REQUIRE(bs.has_value());
    CHECK(bs->first == vec{1});
    CHECK(!v0_witness(F, sys, {0, 0}).has_value());
}

TEST_CASE("combined constraint: zero on honest proofs, rare zero on violations") {
    PrimeField F(101);
    Circuit phi = arithmetize(parse_circuit(kOrText));
    QuadraticSystem sys = v0_compile(F, phi, {});
    vec good = assemble_pi(F, sys, {0, 1});
    vec bad = assemble_pi(F, sys, {0, 0});   // output pin violated
    std::size_t bad_zero = 0;
    for (fe r = 0; r < 101; ++r) {
        CHECK(quad_eval(F, v0_combine(F, sys, r), good) == 0);
        if (quad_eval(F, v0_combine(F, sys, r), bad) == 0) ++bad_zero;
    }
    // a fixed violating proof survives at most T-1 combiner values
    CHECK(bad_zero <= sys.constraints.size() - 1);
}

TEST_CASE("padded compilation pins the filler positions") {
    PrimeField F(101);
    Circuit phi = arithmetize(parse_circuit("inputs 3\ng1 = AND x1 x2\ng2 = AND g1 x3\noutput g2\n"));
    QuadraticSystem sys = v0_compile(F, phi, {}, 2);
    CHECK(sys.n == 4);                        // 3 rounded up to a power of 2
    CHECK(((sys.num_vars + 1) & sys.num_vars) == 0);   // |pi|+1 a power of 2
    vec pi = assemble_pi(F, sys, {1, 1, 1});
    CHECK(pi[3] == 0);
    for (auto& q : sys.constraints) CHECK(quad_eval(F, q, pi) == 0);
    // flipping a padded position must violate its pin
    vec tampered = pi;
    tampered[3] = 1;
    bool violated = false;
    for (auto& q : sys.constraints)
        if (quad_eval(F, q, tampered) != 0) violated = true;
    CHECK(violated);
}
