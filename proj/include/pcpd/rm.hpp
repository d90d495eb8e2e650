#pragma once

#include <algorithm>

#include "pcpd/decoder.hpp"
#include "pcpd/geometry.hpp"
#include "pcpd/quadratic.hpp"

namespace pcpd {

// Base-h digits of v, little endian, fixed length.
inline vec base_digits(std::size_t v, std::size_t h, std::size_t len) {
    vec d(len);
    for (std::size_t i = 0; i < len; ++i) {
        d[i] = v % h;
        v /= h;
    }
    return d;
}

// Sum a variable out of f over the evaluation set H.
inline MultiPoly poly_sum_var(const PrimeField& F, const MultiPoly& f, std::size_t var, const vec& H) {
    // power sums S_e = sum_{c in H} c^e
    std::vector<fe> psum(f.degree_in(var) + 1, 0);
    for (std::size_t e = 0; e < psum.size(); ++e)
        for (fe c : H) psum[e] = F.add(psum[e], F.pow(c, e));
    MultiPoly r = MultiPoly::zero(f.num_vars);
    for (auto& [ex, c] : f.terms) {
        std::vector<unsigned> e = ex;
        unsigned d = e[var];
        e[var] = 0;
        r.add_term(F, std::move(e), F.mul(c, psum[d]));
    }
    return r;
}

// g_4(y, x) = sum_i q_i(x) w_i(y) where w_i is the indicator of the base-h
// digit pattern of i (1-based) on H^t.  Test-scale only.
inline MultiPoly bundle_polys(const PrimeField& F, const vec& H, std::size_t t,
                              const std::vector<MultiPoly>& qs) {
    std::size_t h = H.size(), mx = qs.empty() ? 0 : qs[0].num_vars;
    MultiPoly out = MultiPoly::zero(t + mx);
    for (std::size_t i = 1; i <= qs.size(); ++i) {
        vec digs = base_digits(i, h, t);
        MultiPoly w = interpolate_grid(F, H, t, [&](std::size_t idx) {
            return base_digits(idx, h, t) == digs ? (fe)1 : (fe)0;
        });
        // lift w to the first t variables, q to the last mx
        MultiPoly term = MultiPoly::zero(t + mx);
        for (auto& [ew, cw] : w.terms)
            for (auto& [eq, cq] : qs[i - 1].terms) {
                std::vector<unsigned> e(t + mx);
                std::copy(ew.begin(), ew.end(), e.begin());
                std::copy(eq.begin(), eq.end(), e.begin() + t);
                term.add_term(F, std::move(e), F.mul(cw, cq));
            }
        out = poly_add(F, out, term);
    }
    return out;
}

// Component recovery from a bundled polynomial: q_i(x) = g_4(digits(i), x).
inline fe unbundle_at(const PrimeField& F, const MultiPoly& g4, const vec& H, std::size_t t,
                      std::size_t i, const vec& x) {
    for (fe c : base_digits(i, H.size(), t))
        if (std::find(H.begin(), H.end(), c) == H.end())
            throw std::invalid_argument("unbundle_at: non H-ary index");
    vec pt = base_digits(i, H.size(), t);
    pt.insert(pt.end(), x.begin(), x.end());
    return g4.eval(F, pt);
}

// Structural parameters of the Reed-Muller / sumcheck decoder.
struct RmParams {
    std::size_t h = 0, m1 = 0, m2 = 0, m3 = 0, m4 = 0, t = 0;
    std::size_t n1 = 0;          // |pi| + 1, a power of h
    std::size_t d = 0;           // degree bound of the bundle, h*t + 2*h*m3
    std::size_t M = 0;           // verification probe count, (h+1)*m3 + 5
    std::size_t T_bundle = 0;    // bundled component count, m3*p + 1
    std::size_t T_constraints = 0;
};

// Two-prover decoding verifier for the low degree extension encoding.  The
// proof bundles the product polynomial g_3 = g_2 (x) g_2 and, for every
// combiner value r, the nested partial sums of p_r-hat * g_3; the verifier
// runs a product test plus a sumcheck chain at M probe points, reading all of
// them off one prover answer anchored on a low-degree manifold.
class RmSpec : public DecoderSpec {
  public:
    RmSpec(const PrimeField& F, const Circuit& Phi, const std::vector<Circuit>& Fs, std::size_t h)
        : p_(F.p()), sys_(v0_compile(F, Phi, Fs, h)) {
        pr_.h = h;
        H_.resize(h);
        for (std::size_t c = 0; c < h; ++c) H_[c] = (fe)c;
        if (h < 2 || h >= p_) throw std::invalid_argument("rm: need 2 <= h < p");
        pr_.m1 = log_pow(sys_.n, h);
        pr_.n1 = sys_.num_vars + 1;
        pr_.m2 = log_pow(pr_.n1, h);
        pr_.m3 = 2 * pr_.m2;
        pr_.T_constraints = sys_.constraints.size();
        pr_.T_bundle = pr_.m3 * p_ + 1;
        pr_.t = 1;
        std::size_t cap = h;
        while (cap < pr_.T_bundle + 1) {
            cap *= h;
            ++pr_.t;
        }
        pr_.m4 = pr_.t + pr_.m3;
        pr_.d = h * pr_.t + 2 * h * pr_.m3;
        pr_.M = (h + 1) * pr_.m3 + 5;
        z0_ = vec(pr_.m2, (fe)(h - 1));

        // Constraint coefficient tables on the grid H^{m3} = H^{m2} x H^{m2}:
        // entry (z0,z0) holds the constant term, (z0, i~) the coefficient of
        // variable i, (i~, i'~) the coefficient of the i<=i' quadratic term.
        chat_.reserve(sys_.constraints.size());
        for (auto& q : sys_.constraints) {
            std::map<std::size_t, fe> table;
            auto put = [&](std::size_t a, std::size_t b, fe c) { table[a + b * pr_.n1] = c; };
            put(pr_.n1 - 1, pr_.n1 - 1, q.c0);
            for (auto& [i, c] : q.lin) put(pr_.n1 - 1, i, c);
            for (auto& [ij, c] : q.quad) put(ij.first, ij.second, c);
            chat_.push_back(interpolate_grid(F, H_, pr_.m3, [&](std::size_t idx) {
                auto it = table.find(idx);
                return it == table.end() ? (fe)0 : it->second;
            }));
        }
    }

    const QuadraticSystem& system() const { return sys_; }
    const RmParams& params() const { return pr_; }
    const vec& subcube() const { return H_; }
    const MultiPoly& constraint_extension(std::size_t k) const { return chat_[k]; }

    // p-hat for combiner value r.
    MultiPoly phat(const PrimeField& F, fe r) const {
        MultiPoly out = MultiPoly::zero(pr_.m3);
        fe w = 1;
        for (auto& c : chat_) {
            out = poly_add(F, out, poly_scale(F, c, w));
            w = F.mul(w, r);
        }
        return out;
    }

    std::string name() const override { return "rm"; }
    std::size_t provers() const override { return 2; }
    std::size_t answers() const override { return sys_.ell + 1; }
    std::size_t answer_size() const override { return sys_.ell + 1 + pr_.M + 1; }
    std::size_t witness_len() const override { return sys_.orig_n; }
    std::size_t input_size() const override {
        std::size_t g = sys_.Phi.size();
        for (auto& f : sys_.Fs) g += f.size();
        return sys_.orig_n + g;
    }
    double randomness_bits() const override {
        return (1.0 + 2.0 * pr_.m2 + pr_.m3 + 3.0 * pr_.m4) * std::log2((double)p_);
    }
    double index_bits() const override { return (double)pr_.m1 * std::log2((double)p_); }
    double delta() const override { return std::pow((double)p_, -0.1); }
    double eta() const override {
        return 2.0 * std::cbrt(4.0 * (double)(pr_.h * pr_.m1) / (double)p_);
    }

    vec sample_index(Rng& rng) const override {
        PrimeField F(p_);
        return F.random_vec(rng, pr_.m1);
    }

    fe encode_symbol(const PrimeField& F, const vec& witness, const vec& j) const override {
        return lde_encode(F, witness, H_, pr_.m1).eval(F, j);
    }

    // Bundle-space point for component `idx` at argument x in F^{m3}.
    vec bundle_point(std::size_t idx, const vec& x) const {
        vec pt = base_digits(idx, pr_.h, pr_.t);
        pt.insert(pt.end(), x.begin(), x.end());
        return pt;
    }
    std::size_t sum_index(fe r, std::size_t i) const { return 2 + (std::size_t)r * pr_.m3 + (i - 1); }

    // g_2-space grid point of 1-based string position pos of pi o 1.
    vec grid_point(std::size_t pos) const { return base_digits(pos - 1, pr_.h, pr_.m2); }

    RoundPlan round(const PrimeField& F, std::uint64_t R, const vec& j) const override {
        Rng rng(R);
        std::size_t ell = sys_.ell, h = pr_.h, m3 = pr_.m3;
        fe r = F.random(rng);
        vec x_test = F.random_vec(rng, pr_.m2);
        vec y_test = F.random_vec(rng, pr_.m2);
        vec x_sum = F.random_vec(rng, m3);
        vec x1 = F.random_vec(rng, pr_.m4);
        vec x2 = F.random_vec(rng, pr_.m4);
        vec x3 = F.random_vec(rng, pr_.m4);

        auto g3pt = [&](const vec& u, const vec& v) {
            vec x = u;
            x.insert(x.end(), v.begin(), v.end());
            return bundle_point(1, x);
        };
        // x in F^{m2} embeds into g_3 as (z0, x); a string position embeds via
        // its grid point; the decoded index j embeds via g_1(j) = g_2(j, 0).
        std::vector<vec> os;
        for (std::size_t i = 0; i < ell; ++i) os.push_back(g3pt(z0_, grid_point(sys_.n + i + 1)));
        {
            vec jx = j;
            jx.resize(pr_.m2, 0);
            os.push_back(g3pt(z0_, jx));
        }

        std::vector<vec> us;
        us.push_back(g3pt(z0_, z0_));                        // g~3(z0,z0) = 1
        us.push_back(g3pt(z0_, x_test));                     // product test
        us.push_back(g3pt(z0_, y_test));
        vec xy = x_test;
        xy.insert(xy.end(), y_test.begin(), y_test.end());
        us.push_back(bundle_point(1, xy));
        us.push_back(bundle_point(sum_index(r, m3), x_sum)); // s~_{m3} = phat * g~3
        us.push_back(bundle_point(1, x_sum));
        // per-level sums, top down: s~_{i-1}(prefix,0) = sum_c s~_i(prefix,c,0)
        for (std::size_t i = m3; i >= 2; --i) {
            vec pt(x_sum.begin(), x_sum.begin() + (i - 1));
            pt.resize(m3, 0);
            us.push_back(bundle_point(sum_index(r, i - 1), pt));
            for (std::size_t c = 0; c < h; ++c) {
                vec q(x_sum.begin(), x_sum.begin() + (i - 1));
                q.push_back((fe)c);
                q.resize(m3, 0);
                us.push_back(bundle_point(sum_index(r, i), q));
            }
        }
        for (std::size_t c = 0; c < h; ++c) {               // final zero sum
            vec q{(fe)c};
            q.resize(m3, 0);
            us.push_back(bundle_point(sum_index(r, 1), q));
        }
        if (us.size() != pr_.M) throw std::logic_error("rm round: probe count mismatch");

        std::size_t s = answer_size();
        auto u_at = [&](std::size_t onebased) { return (int)(ell + 1 + onebased - 1); };

        Circuit pred;
        pred.n_inputs = s;
        pred.pins.emplace_back(pred.push(Op::ADD, u_at(1), pred.push(Op::CONST, -1, -1, 0)), 1);
        pred.pins.emplace_back(
            pred.push(Op::SUB, pred.push(Op::MUL, u_at(2), u_at(3)), u_at(4)), 0);
        {
            fe ph = 0, w = 1;
            for (auto& c : chat_) {
                ph = F.add(ph, F.mul(w, c.eval(F, x_sum)));
                w = F.mul(w, r);
            }
            int rhs = pred.push(Op::MUL, pred.push(Op::CONST, -1, -1, ph), u_at(6));
            pred.pins.emplace_back(pred.push(Op::SUB, u_at(5), rhs), 0);
        }
        std::size_t next = 7;
        for (std::size_t i = m3; i >= 2; --i) {
            int lhs = u_at(next++);
            int acc = pred.push(Op::CONST, -1, -1, 0);
            for (std::size_t c = 0; c < h; ++c) acc = pred.push(Op::ADD, acc, u_at(next++));
            pred.pins.emplace_back(pred.push(Op::SUB, lhs, acc), 0);
        }
        {
            int acc = pred.push(Op::CONST, -1, -1, 0);
            for (std::size_t c = 0; c < h; ++c) acc = pred.push(Op::ADD, acc, u_at(next++));
            pred.pins.emplace_back(acc, 0);
        }

        RoundPlan plan;
        plan.predicate = std::move(pred);
        plan.projections.push_back(select_circuit(s, ell + 1 + pr_.M));
        plan.proj_names.push_back("consistency");
        for (std::size_t i = 0; i <= ell; ++i) plan.outputs.push_back(select_circuit(s, i));

        std::vector<vec> blocks = os;
        blocks.insert(blocks.end(), us.begin(), us.end());
        blocks.push_back(x1);
        blocks.push_back(x2);
        blocks.push_back(x3);
        plan.queries.push_back(Query{0, std::move(blocks)});
        plan.queries.push_back(Query{0, {x1}});
        return plan;
    }

    std::shared_ptr<Provers> honest_provers(const PrimeField& F, const vec& witness) const override;

    // Honest-form bundle provers from an arbitrary proof string (used both
    // for completeness and for the low-degree cheating family).
    std::shared_ptr<Provers> provers_from_pi(const PrimeField& F, const vec& pi) const;

    vec expected_outputs(const PrimeField& F, const vec& witness, const vec& j) const override {
        vec out;
        for (auto& f : sys_.Fs) out.push_back(circuit_output(F, f, witness));
        out.push_back(encode_symbol(F, witness, j));
        return out;
    }

  private:
    static std::size_t log_pow(std::size_t v, std::size_t h) {
        std::size_t m = 0, x = 1;
        while (x < v) {
            x *= h;
            ++m;
        }
        if (x != v) throw std::invalid_argument("rm: length not a power of h");
        return m;
    }

    fe p_;
    QuadraticSystem sys_;
    RmParams pr_;
    vec H_, z0_;
    std::vector<MultiPoly> chat_;
};

// Evaluates the honest-form bundle of a proof string pi: g_2 = LDE of pi o 1,
// g_3 its two-copy product, and for every combiner value r the partial sums
// of p_r-hat * g_3, expressed through the r-degree decomposition
// s_i^{p_r} = sum_k r^{k-1} sigma_{i,k} so only T_constraints polynomials per
// level are ever materialized.
class RmBundleProvers : public Provers {
  public:
    RmBundleProvers(const PrimeField& F, const RmSpec& spec, const vec& pi)
        : F_(F.p()), pr_(spec.params()), H_(spec.subcube()) {
        vec str = pi;
        str.push_back(1);
        g2_ = interpolate_grid(F_, H_, pr_.m2,
                               [&](std::size_t idx) { return idx < str.size() ? str[idx] : 0; });
        // g_3(x, y) = g_2(x) g_2(y)
        g3_ = MultiPoly::zero(pr_.m3);
        for (auto& [ea, ca] : g2_.terms)
            for (auto& [eb, cb] : g2_.terms) {
                std::vector<unsigned> e(pr_.m3);
                std::copy(ea.begin(), ea.end(), e.begin());
                std::copy(eb.begin(), eb.end(), e.begin() + pr_.m2);
                g3_.add_term(F_, std::move(e), F_.mul(ca, cb));
            }
        sigma_.resize(pr_.m3);
        for (std::size_t k = 0; k < pr_.T_constraints; ++k) {
            MultiPoly cur = poly_mul(F_, spec.constraint_extension(k), g3_);
            for (std::size_t i = pr_.m3; i >= 1; --i) {
                if (i < pr_.m3) cur = poly_sum_var(F_, cur, i, H_);
                sigma_[i - 1].push_back(cur);
                if (cur.total_degree() > 2 * pr_.m3 * pr_.h)
                    throw std::logic_error("rm bundle: degree ledger violated");
            }
        }
        // Lagrange denominators for the indicator factors
        denom_inv_.resize(pr_.h);
        for (std::size_t c = 0; c < pr_.h; ++c) {
            fe d = 1;
            for (std::size_t c2 = 0; c2 < pr_.h; ++c2)
                if (c2 != c) d = F_.mul(d, F_.sub((fe)c, (fe)c2));
            denom_inv_[c] = F_.inv(d);
        }
    }

    const MultiPoly& g2() const { return g2_; }
    const MultiPoly& g3() const { return g3_; }

    // sigma_{i,k} evaluated lazily; s_i^{p_r}(x) = sum_k r^{k-1} sigma_{i,k}(x).
    fe partial_sum(fe r, std::size_t i, const vec& x) const {
        fe acc = 0, w = 1;
        for (auto& s : sigma_[i - 1]) {
            acc = F_.add(acc, F_.mul(w, s.eval(F_, x)));
            w = F_.mul(w, r);
        }
        return acc;
    }

    fe g4(const vec& yx) const {
        vec y(yx.begin(), yx.begin() + pr_.t);
        vec x(yx.begin() + pr_.t, yx.end());
        bool anchor = true;
        for (fe c : y)
            if (c >= pr_.h) anchor = false;
        if (anchor) {
            std::size_t idx = 0;
            for (std::size_t k = pr_.t; k-- > 0;) idx = idx * pr_.h + (std::size_t)y[k];
            if (idx == 0 || idx > pr_.T_bundle) return 0;
            if (idx == 1) return g3_.eval(F_, x);
            fe r = (fe)((idx - 2) / pr_.m3);
            return partial_sum(r, (idx - 2) % pr_.m3 + 1, x);
        }
        // general point: Lagrange factors per digit position
        std::vector<vec> lag(pr_.t, vec(pr_.h));
        for (std::size_t k = 0; k < pr_.t; ++k)
            for (std::size_t c = 0; c < pr_.h; ++c) {
                fe num = 1;
                for (std::size_t c2 = 0; c2 < pr_.h; ++c2)
                    if (c2 != c) num = F_.mul(num, F_.sub(y[k], (fe)c2));
                lag[k][c] = F_.mul(num, denom_inv_[c]);
            }
        auto w_of = [&](std::size_t idx) {
            fe w = 1;
            for (std::size_t k = 0; k < pr_.t; ++k) {
                w = F_.mul(w, lag[k][idx % pr_.h]);
                idx /= pr_.h;
            }
            return w;
        };
        fe acc = F_.mul(g3_.eval(F_, x), w_of(1));
        // sum over components (r, i) via the sigma decomposition:
        // sum_r w_{idx(r,i)} s_i^{p_r}(x) = sum_k sigma_{i,k}(x) sum_r r^{k-1} w_{idx(r,i)}
        std::size_t p = F_.p();
        for (std::size_t i = 1; i <= pr_.m3; ++i) {
            std::vector<fe> Wk(pr_.T_constraints, 0);
            for (std::size_t r = 0; r < p; ++r) {
                fe w = w_of(2 + r * pr_.m3 + (i - 1));
                fe rp = 1;
                for (std::size_t k = 0; k < pr_.T_constraints; ++k) {
                    Wk[k] = F_.add(Wk[k], F_.mul(rp, w));
                    rp = F_.mul(rp, (fe)r);
                }
            }
            for (std::size_t k = 0; k < pr_.T_constraints; ++k)
                acc = F_.add(acc, F_.mul(Wk[k], sigma_[i - 1][k].eval(F_, x)));
        }
        return acc;
    }

    vec answer(std::size_t prover, const Query& q) override {
        if (prover == 0) {
            vec out;
            out.reserve(q.blocks.size() - 2);
            for (std::size_t b = 0; b + 2 < q.blocks.size(); ++b) out.push_back(g4(q.blocks[b]));
            return out;
        }
        return {g4(q.blocks[0])};
    }

  private:
    PrimeField F_;
    RmParams pr_;
    vec H_;
    MultiPoly g2_, g3_;
    std::vector<std::vector<MultiPoly>> sigma_;   // [i-1][k]
    std::vector<fe> denom_inv_;
};

inline std::shared_ptr<Provers> RmSpec::provers_from_pi(const PrimeField& F, const vec& pi) const {
    return std::make_shared<RmBundleProvers>(F, *this, pi);
}

inline std::shared_ptr<Provers> RmSpec::honest_provers(const PrimeField& F, const vec& witness) const {
    return provers_from_pi(F, assemble_pi(F, sys_, witness));
}

} // namespace pcpd
