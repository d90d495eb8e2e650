#include <doctest.h>

#include "pcpd/codes.hpp"

using namespace pcpd;

TEST_CASE("qh string layout: message then row-major tensor block") {
    PrimeField F(5);
    vec w = qh_string(F, {2, 3});
    CHECK(w == vec{2, 3, 4, 1, 1, 4});
}

TEST_CASE("hadamard encoding at unit vectors returns the message") {
    PrimeField F(101);
    vec a{7, 13, 99};
    Word word = hadamard_encode(F, a);
    CHECK(word.at({1, 0, 0}) == 7);
    CHECK(word.at({0, 1, 0}) == 13);
    CHECK(word.at({0, 0, 1}) == 99);
    CHECK(word.at({1, 1, 1}) == (7 + 13 + 99) % 101);
    CHECK_THROWS_AS(word.at({1, 0}), std::invalid_argument);
}

TEST_CASE("qh encoding evaluates quadratic forms with one linear query") {
    PrimeField F(101);
    Rng rng(2);
    vec a = F.random_vec(rng, 3);
    Word word = qh_encode(F, a);
    // index picking out a_0*a_2 + 5*a_1
    vec idx(3 + 9, 0);
    idx[1] = 5;
    idx[3 + 0 * 3 + 2] = 1;
    CHECK(word.at(idx) == F.add(F.mul(a[0], a[2]), F.mul(5, a[1])));
}

TEST_CASE("low degree extension agrees with the string on the grid") {
    PrimeField F(101);
    vec H{0, 1, 2};
    vec a{5, 9, 14, 2, 0, 7, 1};   // length 7 < 3^2, zero padded
    MultiPoly f = lde_encode(F, a, H, 2);
    CHECK(f.degree_in(0) <= 2);
    CHECK(f.degree_in(1) <= 2);
    for (std::size_t pos = 0; pos < 9; ++pos) {
        vec x{(fe)(pos % 3), (fe)(pos / 3)};
        CHECK(f.eval(F, x) == (pos < a.size() ? a[pos] : 0));
    }
    CHECK_THROWS_AS(lde_encode(F, vec(10, 1), H, 2), std::invalid_argument);
}

TEST_CASE("two distinct low degree extensions rarely agree") {
    PrimeField F(101);
    vec H{0, 1};
    vec a{1, 2, 3, 4}, b{1, 2, 3, 5};
    MultiPoly fa = lde_encode(F, a, H, 2), fb = lde_encode(F, b, H, 2);
    std::size_t agree = 0;
    for (fe x = 0; x < 101; ++x)
        for (fe y = 0; y < 101; ++y)
            if (fa.eval(F, {x, y}) == fb.eval(F, {x, y})) ++agree;
    // mu = h*m/p = 4/101 of the 101^2 points
    CHECK(agree <= 4 * 101);
    CHECK(agree > 0);   // they do intersect somewhere
}

TEST_CASE("agreement parameter: eta = 2 tau = 2 (4 mu)^{1/3}") {
    auto [tau, eta] = agreement_param(1.0 / 101.0);
    CHECK(tau == doctest::Approx(std::cbrt(4.0 / 101.0)));
    CHECK(eta == doctest::Approx(2.0 * tau));
    CodeSpec qh{CodeKind::quadratic_hadamard, 101, 3, {}, 0};
    CHECK(qh.index_len() == 12);
    CHECK(qh.mu() == doctest::Approx(1.0 / 101.0));
    CodeSpec lde{CodeKind::lde, 101, 4, {0, 1}, 2};
    CHECK(lde.mu() == doctest::Approx(4.0 / 101.0));
}

TEST_CASE("dense codeword matches the oracle form") {
    PrimeField F(3);
    CodeSpec spec{CodeKind::quadratic_hadamard, 3, 1, {}, 0};
    vec msg{2};
    vec cw = dense_codeword(F, spec, msg);
    CHECK(cw.size() == 9);   // 3^{1+1}
    for (std::uint64_t j = 0; j < 9; ++j)
        CHECK(cw[j] == encode_at(F, spec, msg, index_digits(3, 2, j)));
}

TEST_CASE("admissible list over GF(3): worked example") {
    PrimeField F(3);
    CodeSpec spec{CodeKind::hadamard, 3, 1, {}, 0};
    vec w{0, 1, 1};
    // codewords: msg 0 -> (0,0,0) agrees 1/3; msg 1 -> (0,1,2) agrees 2/3;
    // msg 2 -> (0,2,1) agrees 2/3.  tau = 1/2 keeps messages 1 and 2.
    auto list = admissible_list(F, spec, w, 1, 2);
    REQUIRE(list.size() == 2);
    CHECK(list[0] == vec{1});
    CHECK(list[1] == vec{2});
}

TEST_CASE("local decoding: unique match decodes, shared point is ambiguous") {
    PrimeField F(3);
    CodeSpec spec{CodeKind::hadamard, 3, 1, {}, 0};
    vec w{0, 1, 1};
    auto at1 = local_decode(F, spec, w, 1, 1, 2);
    REQUIRE(at1.has_value());
    CHECK(*at1 == vec{1});
    auto at2 = local_decode(F, spec, w, 2, 1, 2);
    REQUIRE(at2.has_value());
    CHECK(*at2 == vec{2});
    // index 0 (alpha = 0): both admissible codewords agree there
    CHECK(!local_decode(F, spec, w, 0, 1, 2).has_value());
    // tau = 3/4: nothing is admissible
    CHECK(admissible_list(F, spec, w, 3, 4).empty());
}

TEST_CASE("qh codewords restricted to the linear block are hadamard codewords") {
    PrimeField F(5);
    Rng rng(8);
    vec a = F.random_vec(rng, 2);
    vec qhs = qh_string(F, a);
    for (int i = 0; i < 50; ++i) {
        vec alpha = F.random_vec(rng, 2);
        vec lifted(6, 0);
        lifted[0] = alpha[0];
        lifted[1] = alpha[1];
        CHECK(dot(F, lifted, qhs) == dot(F, alpha, a));
    }
}
