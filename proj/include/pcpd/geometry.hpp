#pragma once

#include <map>

#include "pcpd/poly.hpp"

namespace pcpd {

// Polynomial curve through anchor points: curve(i) = z_i for i = 0..k.
struct Curve {
    std::size_t ambient = 0;
    std::size_t degree = 0;                 // k
    std::vector<vec> comps;                 // per-dimension univariate coefficients
    std::vector<vec> anchors;

    vec eval(const PrimeField& F, fe t) const {
        vec out(ambient, 0);
        for (std::size_t d = 0; d < ambient; ++d) {
            fe acc = 0;
            for (std::size_t i = comps[d].size(); i-- > 0;)
                acc = F.add(F.mul(acc, t), comps[d][i]);
            out[d] = acc;
        }
        return out;
    }
};

inline Curve curve_through(const PrimeField& F, const std::vector<vec>& points) {
    if (points.empty()) throw std::invalid_argument("curve_through: no points");
    if (points.size() > F.p()) throw std::invalid_argument("curve_through: k+1 > |F|");
    Curve c;
    c.ambient = points[0].size();
    c.degree = points.size() - 1;
    c.anchors = points;
    vec nodes(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) nodes[i] = (fe)i % F.p();
    c.comps.resize(c.ambient);
    for (std::size_t d = 0; d < c.ambient; ++d) {
        vec col(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) col[i] = points[i][d];
        c.comps[d] = univariate_interpolate(F, nodes, col);
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        if (c.eval(F, nodes[i]) != points[i]) throw std::logic_error("curve_through: anchor check failed");
    return c;
}

// gamma(t0,t1,t2,t3) = t0 * curve_{x1,z1..zk}(t1) + t2*x2 + t3*x3.
// The locator table stores, for each special point, the canonical parameter
// tuple from construction (first writer wins on degenerate anchors).
struct Manifold {
    Curve curve;                      // through (x1, z1..zk)
    vec x2, x3;
    std::map<vec, std::array<fe, 4>> locator;

    std::size_t ambient() const { return curve.ambient; }
    std::size_t degree() const { return curve.degree + 1; }

    vec eval(const PrimeField& F, const std::array<fe, 4>& t) const {
        vec p = curve.eval(F, t[1]);
        vec out(ambient());
        for (std::size_t d = 0; d < ambient(); ++d)
            out[d] = F.add(F.mul(t[0], p[d]), F.add(F.mul(t[2], x2[d]), F.mul(t[3], x3[d])));
        return out;
    }

    const std::array<fe, 4>& locate(const vec& x) const {
        auto it = locator.find(x);
        if (it == locator.end()) throw std::invalid_argument("Manifold: not a special point");
        return it->second;
    }
};

inline Manifold build_manifold(const PrimeField& F, const std::vector<vec>& zs, const vec& x1,
                               const vec& x2, const vec& x3) {
    std::vector<vec> pts;
    pts.reserve(zs.size() + 1);
    pts.push_back(x1);
    for (auto& z : zs) pts.push_back(z);
    Manifold m;
    m.curve = curve_through(F, pts);
    m.x2 = x2;
    m.x3 = x3;
    m.locator.emplace(x1, std::array<fe, 4>{1, 0, 0, 0});
    for (std::size_t i = 0; i < zs.size(); ++i)
        m.locator.emplace(zs[i], std::array<fe, 4>{1, (fe)(i + 1) % F.p(), 0, 0});
    m.locator.emplace(x2, std::array<fe, 4>{0, 0, 1, 0});
    m.locator.emplace(x3, std::array<fe, 4>{0, 0, 0, 1});
    return m;
}

// Symbolic composition Q(gamma(t)): dense 4-variate coefficients, degree at
// most deg(Q) * (k+1); capability error past the coefficient cap.
inline MultiPoly restrict_to_manifold(const PrimeField& F, const MultiPoly& Q, const Manifold& g) {
    if (Q.num_vars != g.ambient()) throw std::invalid_argument("restrict_to_manifold: dimension mismatch");
    // gamma components as 4-variate polynomials
    std::vector<MultiPoly> comp(g.ambient(), MultiPoly::zero(4));
    for (std::size_t d = 0; d < g.ambient(); ++d) {
        for (std::size_t i = 0; i < g.curve.comps[d].size(); ++i)
            if (g.curve.comps[d][i] != 0)
                comp[d].add_term(F, {1, (unsigned)i, 0, 0}, g.curve.comps[d][i]);
        if (g.x2[d] != 0) comp[d].add_term(F, {0, 0, 1, 0}, g.x2[d]);
        if (g.x3[d] != 0) comp[d].add_term(F, {0, 0, 0, 1}, g.x3[d]);
    }
    MultiPoly out = MultiPoly::zero(4);
    for (auto& [e, c] : Q.terms) {
        MultiPoly term = MultiPoly::constant(4, c);
        for (std::size_t d = 0; d < g.ambient(); ++d)
            for (unsigned rep = 0; rep < e[d]; ++rep) term = poly_mul(F, term, comp[d]);
        out = poly_add(F, out, term);
    }
    unsigned bound = Q.total_degree() * (unsigned)(g.curve.degree + 1);
    if (out.total_degree() > bound) throw std::logic_error("restrict_to_manifold: degree ledger violated");
    return out;
}

// A_gamma(x) for a claimed restriction: evaluate the 4-variate answer at
// x's canonical parameter tuple.
inline fe manifold_value_at(const PrimeField& F, const MultiPoly& answer, const vec& x,
                            const Manifold& g) {
    const auto& t = g.locate(x);
    return answer.eval(F, vec{t[0], t[1], t[2], t[3]});
}

} // namespace pcpd
