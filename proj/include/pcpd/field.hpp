#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pcpd/rng.hpp"

namespace pcpd {

using fe = std::uint64_t;           // field element, always reduced mod p
using vec = std::vector<fe>;

// Arithmetic in GF(p) for a prime p.  Elements are plain uint64 values in
// [0, p); all operations go through an explicit PrimeField so mixing fields
// is impossible by construction in the modules above.
class PrimeField {
public:
    explicit PrimeField(fe p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus is not prime");
    }

    fe p() const { return p_; }

    fe add(fe a, fe b) const { fe s = a + b; return s >= p_ ? s - p_ : s; }
    fe sub(fe a, fe b) const { return a >= b ? a - b : a + p_ - b; }
    fe neg(fe a) const { return a == 0 ? 0 : p_ - a; }
    fe mul(fe a, fe b) const { return (unsigned __int128)a * b % p_; }

    fe pow(fe a, std::uint64_t e) const {
        fe r = 1;
        a %= p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    fe inv(fe a) const {
        if (a % p_ == 0) throw std::domain_error("PrimeField: inverse of zero");
        return pow(a, p_ - 2);
    }

    fe from_int(long long v) const {
        long long r = v % (long long)p_;
        return r < 0 ? (fe)(r + (long long)p_) : (fe)r;
    }

    fe random(Rng& rng) const { return rng.field(p_); }

    vec random_vec(Rng& rng, std::size_t n) const {
        vec v(n);
        for (auto& x : v) x = rng.field(p_);
        return v;
    }

    // Trial division; fine at desk scale.
    static bool is_prime(fe n) {
        if (n < 2) return false;
        for (fe d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    fe p_;
};

inline fe dot(const PrimeField& F, const vec& a, const vec& b) {
    fe s = 0;
    std::size_t n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i) s = F.add(s, F.mul(a[i], b[i]));
    return s;
}

} // namespace pcpd
