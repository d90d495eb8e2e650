#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcpd {

// One stage of the composition tower, all sizes in log2 space where the
// underlying quantity is astronomically large.  `lg_delta`/`lg_eta` are
// log2 of the stage's soundness / agreement parameters; cumulative columns
// track the composed object after folding this stage in.
struct CascadeRow {
    std::string stage;
    double lg_h = 0, m = 0, lg_n = 0, R = 0, lg_s = 0;
    double lg_delta = 0, lg_eta = 0;
    std::size_t answers = 0;       // inner answer count l_i + 1
    double cum_R = 0;
    double cum_lg_delta = 0;
    std::size_t cum_provers = 0;
    std::size_t cum_answers = 0;
};

struct CascadeResult {
    double L = 0, eps = 0, eps_prime = 0, c = 0, field_bits = 0;
    std::size_t i_star = 0;
    std::vector<CascadeRow> rows;
    std::map<std::string, double> summary;
};

// log2(2^a + 2^b), numerically stable.
inline double lg_add(double a, double b) {
    double hi = a > b ? a : b, lo = a > b ? b : a;
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

// Parameter tower of the three-stage composition: an outermost large-field
// sumcheck decoder, i* further sumcheck stages with shrinking subcubes, one
// h=2 sumcheck stage and a final Hadamard stage.  Everything is a closed-form
// function of L = lg(instance size), eps, the randomness constant c, and the
// field size in bits (default L^{1-eps}).
inline CascadeResult cascade_params(double L, double eps, double c = 1.0, double field_bits = 0) {
    if (!(L > 1.0)) throw std::invalid_argument("cascade: need L > 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("cascade: need 0 < eps < 1");
    CascadeResult res;
    res.L = L;
    res.eps = eps;
    res.eps_prime = eps / 10.0;
    res.c = c;
    res.field_bits = field_bits > 0 ? field_bits : std::pow(L, 1.0 - eps);
    double fb = res.field_bits;
    double lg_delta_unit = -0.1 * fb;   // per-stage soundness |F|^{-0.1}
    double lg_eta_lde = -fb / 6.0;      // LDE agreement parameter |F|^{-1/6}

    // Stage 0: outermost decoder, h_0 = |F|^{0.1} on inputs of size 2^L.
    CascadeRow r0;
    r0.stage = "0";
    r0.lg_h = 0.1 * fb;
    r0.lg_n = L;
    r0.m = L / r0.lg_h;
    r0.R = c * r0.m * fb;
    r0.lg_s = 1.0 + 2.0 * (std::log2(r0.m) + r0.lg_h);
    r0.lg_delta = lg_delta_unit;
    r0.lg_eta = lg_eta_lde;
    r0.answers = 1;
    r0.cum_R = r0.R;
    r0.cum_lg_delta = r0.lg_delta;
    r0.cum_provers = 2;
    r0.cum_answers = 1;
    res.rows.push_back(r0);

    // i*: smallest i with 1 - eps - i*eps' < 9*eps/80.
    std::size_t istar = 1;
    while (1.0 - eps - (double)istar * res.eps_prime >= 9.0 * eps / 80.0) ++istar;
    res.i_star = istar;

    double cum_R = r0.R;
    double cum_lg_delta = r0.lg_delta;
    std::size_t cum_provers = 2;
    for (std::size_t i = 1; i <= istar; ++i) {
        CascadeRow r;
        r.stage = std::to_string(i);
        r.lg_h = std::pow(L, 1.0 - eps - (double)i * res.eps_prime);
        r.lg_n = 3.0 * std::pow(L, 1.0 - eps - (double)(i - 1) * res.eps_prime);
        r.m = r.lg_n / r.lg_h;   // = 3 L^{eps'}
        r.R = c * r.m * fb;
        r.lg_s = 1.0 + 2.0 * (std::log2(r.m) + r.lg_h);
        r.lg_delta = lg_delta_unit;
        r.lg_eta = lg_eta_lde;
        r.answers = 2 * i + 1;
        cum_R += r.R + r.m * fb;                 // inner randomness + index bits
        cum_lg_delta = lg_add(cum_lg_delta, lg_add(r.lg_delta, r.lg_eta));
        cum_provers += 2;
        r.cum_R = cum_R;
        r.cum_lg_delta = cum_lg_delta;
        r.cum_provers = cum_provers;
        r.cum_answers = 1;
        res.rows.push_back(r);
    }
    double R_I = cum_R;
    double lg_s_I = res.rows.back().lg_s;
    // The tower's headline bound is quoted as (i*+1)(|F|^{-0.1} + |F|^{-1/6}).
    double lg_delta_I = std::log2((double)istar + 1.0) + lg_add(lg_delta_unit, lg_eta_lde);

    // Stage II: h = 2 sumcheck on inputs of size s^(I)-ish, lg n = 3 L^{9eps/80}.
    CascadeRow r2;
    r2.stage = "II";
    r2.lg_h = 1.0;
    r2.lg_n = 3.0 * std::pow(L, 9.0 * eps / 80.0);
    r2.m = r2.lg_n;
    r2.R = c * r2.m * fb;
    r2.lg_s = 1.0 + 2.0 * (std::log2(r2.m) + 1.0);   // s = 2 (2m)^2 = 8 m^2
    r2.lg_delta = lg_delta_unit;
    r2.lg_eta = lg_eta_lde;
    r2.answers = 2 * istar + 1;
    cum_R += r2.R + r2.m * fb;
    cum_lg_delta = lg_add(cum_lg_delta, lg_add(r2.lg_delta, r2.lg_eta));
    cum_provers += 2;
    r2.cum_R = cum_R;
    r2.cum_lg_delta = cum_lg_delta;
    r2.cum_provers = cum_provers;
    r2.cum_answers = 1;
    res.rows.push_back(r2);
    double R_II_total = cum_R;
    double lg_delta_II = lg_add(lg_delta_I, lg_add(lg_delta_unit, lg_eta_lde));

    // Stage III: Hadamard-style decoder on instances of size n_III = s^(II).
    CascadeRow r3;
    r3.stage = "III";
    double n3 = std::exp2(r2.lg_s);
    r3.lg_h = 0;
    r3.lg_n = r2.lg_s;
    r3.m = 0;
    r3.R = c * n3 * n3 * fb;
    double l3 = 2.0 * ((double)istar + 1.0);
    r3.lg_s = std::log2(l3 + 8.0);                    // concrete answer size l+8
    r3.lg_delta = lg_delta_unit;
    r3.lg_eta = -fb / 2.0;                            // quadratic encoding agreement
    r3.answers = (std::size_t)l3 + 1;
    cum_R += r3.R + (n3 + n3 * n3) * fb;              // + lg blocklength of the inner code
    cum_lg_delta = lg_add(cum_lg_delta, lg_add(r3.lg_delta, r3.lg_eta));
    cum_provers += 2;
    r3.cum_R = cum_R;
    r3.cum_lg_delta = cum_lg_delta;
    r3.cum_provers = cum_provers;
    r3.cum_answers = 1;
    res.rows.push_back(r3);
    double lg_delta_III = lg_add(lg_delta_II, lg_add(lg_delta_unit, -fb / 2.0));

    res.summary = {
        {"field_bits", fb},
        {"eps_prime", res.eps_prime},
        {"lg_h0", r0.lg_h},
        {"m0", r0.m},
        {"R0", r0.R},
        {"lg_s0", r0.lg_s},
        {"i_star", (double)istar},
        {"m_i", istar >= 1 ? res.rows[1].m : 0.0},
        {"R_I", R_I},
        {"lg_s_I", lg_s_I},
        {"lg_delta_I", lg_delta_I},
        {"m_II", r2.m},
        {"R_II", r2.R},
        {"lg_s_II", r2.lg_s},
        {"R_II_total", R_II_total},
        {"lg_delta_II", lg_delta_II},
        {"n_III", n3},
        {"R_III", r3.R},
        {"s_III", l3 + 8.0},
        {"R_III_total", cum_R},
        {"lg_delta_III", lg_delta_III},
        {"provers_final", (double)cum_provers},
        {"answers_final", 1.0},
    };
    return res;
}

} // namespace pcpd
