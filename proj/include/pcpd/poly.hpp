#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "pcpd/field.hpp"

namespace pcpd {

// Everything brute-force here materializes coefficient vectors; keep them
// under this cap so the oracles stay tractable (capability error otherwise).
inline constexpr std::size_t kCoeffCap = 100000;

// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
struct MultiPoly {
    std::size_t num_vars = 0;
    std::map<std::vector<unsigned>, fe> terms;   // canonical: no zero coefficients

    static MultiPoly zero(std::size_t m) { return MultiPoly{m, {}}; }

    static MultiPoly constant(std::size_t m, fe c) {
        MultiPoly f{m, {}};
        if (c != 0) f.terms[std::vector<unsigned>(m, 0)] = c;
        return f;
    }

    bool is_zero() const { return terms.empty(); }

    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (auto& [e, c] : terms) d = std::max(d, e[var]);
        return d;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (auto& [e, c] : terms) {
            unsigned t = 0;
            for (unsigned x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }

    void add_term(const PrimeField& F, std::vector<unsigned> e, fe c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(std::move(e), c);
        } else {
            it->second = F.add(it->second, c);
            if (it->second == 0) terms.erase(it);
        }
        if (terms.size() > kCoeffCap)
            throw std::length_error("MultiPoly: coefficient cap exceeded");
    }

    fe eval(const PrimeField& F, const vec& x) const {
        if (x.size() != num_vars) throw std::invalid_argument("MultiPoly::eval: dimension mismatch");
        fe acc = 0;
        for (auto& [e, c] : terms) {
            fe t = c;
            for (std::size_t i = 0; i < num_vars; ++i)
                if (e[i]) t = F.mul(t, F.pow(x[i], e[i]));
            acc = F.add(acc, t);
        }
        return acc;
    }
};

inline MultiPoly poly_add(const PrimeField& F, const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (auto& [e, c] : b.terms) r.add_term(F, e, c);
    return r;
}

inline MultiPoly poly_scale(const PrimeField& F, const MultiPoly& a, fe s) {
    MultiPoly r = MultiPoly::zero(a.num_vars);
    if (s == 0) return r;
    for (auto& [e, c] : a.terms) r.terms[e] = F.mul(c, s);
    return r;
}

inline MultiPoly poly_mul(const PrimeField& F, const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = MultiPoly::zero(a.num_vars);
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            std::vector<unsigned> e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(F, std::move(e), F.mul(ca, cb));
        }
    return r;
}

// Coefficients (low to high) of the unique degree-<k univariate polynomial
// through the k points (nodes[i], values[i]).
inline vec univariate_interpolate(const PrimeField& F, const vec& nodes, const vec& values) {
    std::size_t k = nodes.size();
    if (values.size() != k || k == 0) throw std::invalid_argument("univariate_interpolate: bad input");
    // master = prod (x - nodes[i])
    vec master(k + 1, 0);
    master[0] = 1;
    for (std::size_t i = 0; i < k; ++i) {
        // multiply by (x - nodes[i]); iterate downward to reuse in place
        for (std::size_t d = k; d > 0; --d)
            master[d] = F.sub(master[d - 1], F.mul(master[d], nodes[i]));
        master[0] = F.mul(master[0], F.neg(nodes[i]));
    }
    vec result(k, 0);
    vec q(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        // q = master / (x - nodes[i]) by synthetic division
        fe carry = 0;
        for (std::size_t d = k; d-- > 0;) {
            carry = F.add(master[d + 1], F.mul(carry, nodes[i]));
            q[d] = carry;
        }
        fe denom = 1;
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) denom = F.mul(denom, F.sub(nodes[i], nodes[j]));
        fe scale = F.mul(values[i], F.inv(denom));
        for (std::size_t d = 0; d < k; ++d)
            result[d] = F.add(result[d], F.mul(q[d], scale));
    }
    return result;
}

// Interpolate a full table on the grid H^m into the unique polynomial of
// individual degree < |H|.  `values(idx)` gives the table entry for the grid
// point whose base-h digits (little endian over H positions) are idx.
template <typename Table>
MultiPoly interpolate_grid(const PrimeField& F, const vec& H, std::size_t m, Table&& values) {
    std::size_t h = H.size();
    if (h == 0) throw std::invalid_argument("interpolate_grid: empty H");
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        total *= h;
        if (total > kCoeffCap) throw std::length_error("interpolate_grid: grid exceeds cap");
    }
    // work[idx] starts as the value table and is transformed axis by axis
    // from point-values into coefficients.
    vec work(total);
    for (std::size_t idx = 0; idx < total; ++idx) work[idx] = values(idx);
    std::size_t stride = 1;
    for (std::size_t axis = 0; axis < m; ++axis) {
        for (std::size_t base = 0; base < total; ++base) {
            if ((base / stride) % h != 0) continue;
            vec column(h);
            for (std::size_t i = 0; i < h; ++i) column[i] = work[base + i * stride];
            vec coeffs = univariate_interpolate(F, H, column);
            for (std::size_t i = 0; i < h; ++i) work[base + i * stride] = coeffs[i];
        }
        stride *= h;
    }
    MultiPoly f = MultiPoly::zero(m);
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (work[idx] == 0) continue;
        std::vector<unsigned> e(m);
        std::size_t rest = idx;
        for (std::size_t i = 0; i < m; ++i) {
            e[i] = (unsigned)(rest % h);
            rest /= h;
        }
        f.terms.emplace(std::move(e), work[idx]);
    }
    return f;
}

inline fe eval_poly(const PrimeField& F, const MultiPoly& f, const vec& x) { return f.eval(F, x); }

} // namespace pcpd
