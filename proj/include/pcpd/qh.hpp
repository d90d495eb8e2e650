#pragma once

#include <algorithm>

#include "pcpd/decoder.hpp"
#include "pcpd/quadratic.hpp"

namespace pcpd {

// Reduced row echelon basis of the span of `gens`; returns the basis rows and
// their pivot columns.  Over the canonical basis, a vector w in the span has
// coordinates w[pivot_i].
struct Rref {
    std::vector<vec> rows;
    std::vector<std::size_t> pivots;
};

inline Rref rref_basis(const PrimeField& F, std::vector<vec> rows) {
    Rref out;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        fe inv = F.inv(rows[r][c]);
        for (std::size_t k = c; k < cols; ++k) rows[r][k] = F.mul(rows[r][k], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            fe f = rows[i][c];
            for (std::size_t k = c; k < cols; ++k)
                rows[i][k] = F.sub(rows[i][k], F.mul(f, rows[r][k]));
        }
        out.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

// Coordinates of w in the canonical basis; checked against the expansion.
inline vec span_coords(const PrimeField& F, const Rref& basis, const vec& w) {
    vec c(basis.rows.size());
    for (std::size_t i = 0; i < basis.rows.size(); ++i) c[i] = w[basis.pivots[i]];
    vec back(w.size(), 0);
    for (std::size_t i = 0; i < basis.rows.size(); ++i)
        for (std::size_t k = 0; k < w.size(); ++k)
            back[k] = F.add(back[k], F.mul(c[i], basis.rows[i][k]));
    if (back != w) throw std::logic_error("span_coords: vector not in span");
    return c;
}

// Two-prover decoding verifier for the quadratic (Hadamard-style) encoding.
// The big prover claims the restriction of a global linear function on
// F^{m+m^2} to a random (l+8)-dimensional subspace; the small prover is the
// point oracle it must be consistent with.  Checks: the sampled combined
// constraint vanishes, the linear function respects the tensor structure,
// and the restriction matches the point oracle.
class QhSpec : public DecoderSpec {
  public:
    QhSpec(const PrimeField& F, const Circuit& Phi, const std::vector<Circuit>& Fs)
        : p_(F.p()), sys_(v0_compile(F, Phi, Fs)) {
        m_ = sys_.num_vars;
        D_ = m_ + m_ * m_;
    }

    const QuadraticSystem& system() const { return sys_; }

    std::string name() const override { return "qh"; }
    std::size_t provers() const override { return 2; }
    std::size_t answers() const override { return sys_.ell + 1; }
    std::size_t answer_size() const override { return sys_.ell + 8; }
    std::size_t witness_len() const override { return sys_.orig_n; }
    std::size_t input_size() const override {
        std::size_t g = sys_.Phi.size();
        for (auto& f : sys_.Fs) g += f.size();
        return sys_.orig_n + g;
    }
    double randomness_bits() const override {
        return (1.0 + 2.0 * (double)m_ + 3.0 * (double)D_) * std::log2((double)p_);
    }
    double index_bits() const override {
        std::size_t n = sys_.orig_n;
        return (double)(n + n * n) * std::log2((double)p_);
    }
    double delta() const override { return std::pow((double)p_, -0.1); }
    double eta() const override { return 2.0 * std::cbrt(4.0 / (double)p_); }

    vec sample_index(Rng& rng) const override {
        PrimeField F(p_);
        std::size_t n = sys_.orig_n;
        return F.random_vec(rng, n + n * n);
    }

    fe encode_symbol(const PrimeField& F, const vec& witness, const vec& j) const override {
        return dot(F, j, qh_string(F, witness));
    }

    RoundPlan round(const PrimeField& F, std::uint64_t R, const vec& j) const override {
        Rng rng(R);
        std::size_t ell = sys_.ell, s = ell + 8, n = sys_.orig_n;
        fe r = F.random(rng);
        Quad pq = v0_combine(F, sys_, r);
        vec z(D_, 0);
        for (auto& [i, c] : pq.lin) z[i] = c;
        for (auto& [ij, c] : pq.quad) z[m_ + ij.first * m_ + ij.second] = c;

        vec o_last(D_, 0);
        for (std::size_t i = 0; i < n; ++i) o_last[i] = j[i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) o_last[m_ + i * m_ + k] = j[n + i * n + k];

        Rref basis;
        vec u1(D_, 0), u2(D_, 0), u3(D_, 0), x1;
        for (int attempt = 0;; ++attempt) {
            if (attempt == 16) throw std::runtime_error("qh round: degenerate span persisted");
            vec beta = F.random_vec(rng, m_), gamma = F.random_vec(rng, m_);
            std::fill(u1.begin(), u1.end(), 0);
            std::fill(u2.begin(), u2.end(), 0);
            std::fill(u3.begin(), u3.end(), 0);
            for (std::size_t i = 0; i < m_; ++i) u1[i] = beta[i];
            for (std::size_t i = 0; i < m_; ++i) u2[i] = gamma[i];
            for (std::size_t i = 0; i < m_; ++i)
                for (std::size_t k = 0; k < m_; ++k) u3[m_ + i * m_ + k] = F.mul(beta[i], gamma[k]);
            x1 = F.random_vec(rng, D_);
            vec x2 = F.random_vec(rng, D_), x3 = F.random_vec(rng, D_);
            std::vector<vec> gens{x1, x2, x3, u1, u2, u3, z};
            for (std::size_t i = 0; i < ell; ++i) {
                vec o(D_, 0);
                o[n + i] = 1;
                gens.push_back(std::move(o));
            }
            gens.push_back(o_last);
            basis = rref_basis(F, gens);
            if (basis.rows.size() == s) break;
        }

        auto coords = [&](const vec& w) { return span_coords(F, basis, w); };
        auto lin_gate = [&](Circuit& c, const vec& cf) {
            int acc = c.push(Op::CONST, -1, -1, 0);
            for (std::size_t i = 0; i < s; ++i) {
                if (cf[i] == 0) continue;
                int t = c.push(Op::CONST, -1, -1, cf[i]);
                t = c.push(Op::MUL, t, (int)i);
                acc = c.push(Op::ADD, acc, t);
            }
            return acc;
        };

        RoundPlan plan;
        Circuit pred;
        pred.n_inputs = s;
        int gz = lin_gate(pred, coords(z));
        int gc = pred.push(Op::CONST, -1, -1, pq.c0);
        pred.pins.emplace_back(pred.push(Op::ADD, gz, gc), 0);
        int l1 = lin_gate(pred, coords(u1));
        int l2 = lin_gate(pred, coords(u2));
        int l3 = lin_gate(pred, coords(u3));
        pred.pins.emplace_back(pred.push(Op::SUB, pred.push(Op::MUL, l1, l2), l3), 0);
        plan.predicate = std::move(pred);

        {
            Circuit proj;
            proj.n_inputs = s;
            proj.output = lin_gate(proj, coords(x1));
            plan.projections.push_back(std::move(proj));
            plan.proj_names.push_back("consistency");
        }
        for (std::size_t i = 0; i < ell; ++i) {
            vec o(D_, 0);
            o[n + i] = 1;
            Circuit out;
            out.n_inputs = s;
            out.output = lin_gate(out, coords(o));
            plan.outputs.push_back(std::move(out));
        }
        {
            Circuit out;
            out.n_inputs = s;
            out.output = lin_gate(out, coords(o_last));
            plan.outputs.push_back(std::move(out));
        }

        plan.queries.push_back(Query{0, basis.rows});
        plan.queries.push_back(Query{0, {x1}});
        return plan;
    }

    std::shared_ptr<Provers> honest_provers(const PrimeField& F, const vec& witness) const override;

    vec expected_outputs(const PrimeField& F, const vec& witness, const vec& j) const override {
        vec out;
        for (auto& f : sys_.Fs) out.push_back(circuit_output(F, f, witness));
        out.push_back(encode_symbol(F, witness, j));
        return out;
    }

  private:
    fe p_;
    QuadraticSystem sys_;
    std::size_t m_ = 0, D_ = 0;
};

// Both provers answer from the quadratic encoding of the full proof string;
// the big prover evaluates it on each basis vector of the queried subspace.
class QhHonestProvers : public Provers {
  public:
    QhHonestProvers(const PrimeField& F, vec qhs) : F_(F.p()), qhs_(std::move(qhs)) {}

    vec answer(std::size_t prover, const Query& q) override {
        if (prover == 0) {
            vec out;
            out.reserve(q.blocks.size());
            for (auto& b : q.blocks) out.push_back(dot(F_, b, qhs_));
            return out;
        }
        return {dot(F_, q.blocks[0], qhs_)};
    }

  private:
    PrimeField F_;
    vec qhs_;
};

inline std::shared_ptr<Provers> QhSpec::honest_provers(const PrimeField& F, const vec& witness) const {
    vec pi = assemble_pi(F, sys_, witness);
    return std::make_shared<QhHonestProvers>(F, qh_string(F, pi));
}

} // namespace pcpd
