#!/usr/bin/env python3
"""Independent recomputation of the composition-tower parameter summary.

Regenerates tests/fixtures/cascade_golden.json from closed-form formulas
written from scratch (no shared code with the C++ calculator).  Run from the
repository root:

    python3 tools/make_cascade_fixture.py
"""

import json
import math
import os


def lg_add(a, b):
    hi, lo = max(a, b), min(a, b)
    return hi + math.log2(1.0 + 2.0 ** (lo - hi))


def summary(L, eps, c=1.0, field_bits=0.0):
    epsp = eps / 10.0
    fb = field_bits if field_bits > 0 else L ** (1.0 - eps)
    lg_delta_unit = -0.1 * fb
    lg_eta_lde = -fb / 6.0

    lg_h0 = 0.1 * fb
    m0 = L / lg_h0
    R0 = c * m0 * fb
    lg_s0 = 1.0 + 2.0 * (math.log2(m0) + lg_h0)

    i_star = 1
    while 1.0 - eps - i_star * epsp >= 9.0 * eps / 80.0:
        i_star += 1

    m_i = 3.0 * L ** epsp
    cum_R = R0
    lg_s_I = lg_s0
    for i in range(1, i_star + 1):
        lg_h = L ** (1.0 - eps - i * epsp)
        R_i = c * m_i * fb
        cum_R += R_i + m_i * fb
        lg_s_I = 1.0 + 2.0 * (math.log2(m_i) + lg_h)
    R_I = cum_R
    lg_delta_I = math.log2(i_star + 1.0) + lg_add(lg_delta_unit, lg_eta_lde)

    m_II = 3.0 * L ** (9.0 * eps / 80.0)
    R_II = c * m_II * fb
    lg_s_II = 1.0 + 2.0 * (math.log2(m_II) + 1.0)
    R_II_total = cum_R + R_II + m_II * fb
    lg_delta_II = lg_add(lg_delta_I, lg_add(lg_delta_unit, lg_eta_lde))

    n_III = 2.0 ** lg_s_II
    R_III = c * n_III * n_III * fb
    s_III = 2.0 * (i_star + 1.0) + 8.0
    R_III_total = R_II_total + R_III + (n_III + n_III * n_III) * fb
    lg_delta_III = lg_add(lg_delta_II, lg_add(lg_delta_unit, -fb / 2.0))

    provers_final = 2.0 * (i_star + 3.0)

    return {
        "field_bits": fb,
        "eps_prime": epsp,
        "lg_h0": lg_h0,
        "m0": m0,
        "R0": R0,
        "lg_s0": lg_s0,
        "i_star": float(i_star),
        "m_i": m_i,
        "R_I": R_I,
        "lg_s_I": lg_s_I,
        "lg_delta_I": lg_delta_I,
        "m_II": m_II,
        "R_II": R_II,
        "lg_s_II": lg_s_II,
        "R_II_total": R_II_total,
        "lg_delta_II": lg_delta_II,
        "n_III": n_III,
        "R_III": R_III,
        "s_III": s_III,
        "R_III_total": R_III_total,
        "lg_delta_III": lg_delta_III,
        "provers_final": provers_final,
        "answers_final": 1.0,
    }


def main():
    cases = [
        {"L": 2.0 ** 20, "eps": 0.25, "c": 1.0, "field_bits": 0.0},
        {"L": 2.0 ** 16, "eps": 0.5, "c": 2.0, "field_bits": 0.0},
        {"L": 10000.0, "eps": 0.25, "c": 1.0, "field_bits": 512.0},
    ]
    out = []
    for case in cases:
        out.append({"inputs": case, "summary": summary(**case)})
    dest = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures",
                        "cascade_golden.json")
    os.makedirs(os.path.dirname(dest), exist_ok=True)
    with open(dest, "w") as f:
        json.dump(out, f, indent=2)
        f.write("\n")
    print(f"wrote {os.path.normpath(dest)} ({len(out)} cases)")


if __name__ == "__main__":
    main()
