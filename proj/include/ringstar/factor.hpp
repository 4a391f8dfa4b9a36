#pragma once

// Prime factorization in the supported rings (desk-scale trial division)
// and the residue-system splitting R/(m) = prod R/(p^e).

#include <utility>
#include <vector>

#include "ringstar/errors.hpp"
#include "ringstar/rings.hpp"

namespace ringstar {

template <class R> struct Factorization {
    elem_t<R> unit;                              // m = unit * prod p_i^{e_i}
    std::vector<std::pair<elem_t<R>, int>> primes; // canonical, pairwise non-associate
};

namespace detail {

inline std::vector<std::pair<Int, int>> int_factor(Int n) {
    std::vector<std::pair<Int, int>> out;
    if (n < 0) n = -n;
    for (Int d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// a^2 + b^2 = p for a rational prime p = 1 mod 4 (or p = 2)
inline std::pair<Int, Int> two_squares(const Int& p) {
    for (Int a = 1; a * a <= p; ++a) {
        Int rest = p - a * a;
        Int b = boost::multiprecision::sqrt(rest);
        if (b * b == rest) return {a, b};
    }
    throw Error("no two-square decomposition found");
}

// a^2 - ab + b^2 = p for a rational prime p = 1 mod 3 (or p = 3)
inline std::pair<Int, Int> eisenstein_norm_form(const Int& p) {
    for (Int a = 1; a * a <= 4 * p; ++a) {
        Int disc = 4 * p - 3 * a * a;
        if (disc < 0) break;
        Int s = boost::multiprecision::sqrt(disc);
        if (s * s != disc) continue;
        for (int sign = 0; sign < 2; ++sign) {
            Int twob = sign == 0 ? Int(a + s) : Int(a - s);
            if (floor_mod(twob, 2) != 0) continue;
            Int b = twob / 2;
            if (a * a - a * b + b * b == p) return {a, b};
        }
    }
    throw Error("no Eisenstein norm form found");
}

template <class R>
void divide_out(const R& ring, elem_t<R>& cur, const elem_t<R>& prime,
                std::vector<std::pair<elem_t<R>, int>>& primes) {
    int e = 0;
    while (!ring.is_unit(cur) && divides(ring, prime, cur)) {
        cur = exact_div(ring, cur, prime);
        ++e;
    }
    if (e) primes.emplace_back(prime, e);
}

} // namespace detail

template <class R> Factorization<R> factor(const R& ring, const elem_t<R>& m) {
    if (ring.is_zero(m)) throw DegenerateInput("factoring zero");
    if (ring.is_unit(m)) throw DegenerateInput("factoring a unit");

    Factorization<R> out;
    elem_t<R> cur = m;

    if constexpr (R::kind == RingKind::integers) {
        for (auto& [p, e] : detail::int_factor(m)) {
            (void)e;
            detail::divide_out(ring, cur, p, out.primes);
        }
    } else if constexpr (R::kind == RingKind::gaussian) {
        for (auto& [p, e] : detail::int_factor(ring.norm(m))) {
            (void)e;
            if (p == 2) {
                detail::divide_out(ring, cur, GaussInt{1, 1}, out.primes);
            } else if (floor_mod(p, 4) == 3) {
                detail::divide_out(ring, cur, GaussInt{p, 0}, out.primes);
            } else {
                auto [a, b] = detail::two_squares(p);
                auto p1 = ring.canonical_associate(GaussInt{a, b}).second;
                auto p2 = ring.canonical_associate(GaussInt{a, -b}).second;
                detail::divide_out(ring, cur, p1, out.primes);
                if (!(p2 == p1)) detail::divide_out(ring, cur, p2, out.primes);
            }
        }
    } else if constexpr (R::kind == RingKind::eisenstein) {
        for (auto& [p, e] : detail::int_factor(ring.norm(m))) {
            (void)e;
            if (p == 3) {
                detail::divide_out(ring, cur, ring.smallest_prime(), out.primes);
            } else if (floor_mod(p, 3) == 2) {
                detail::divide_out(ring, cur, EisenInt{p, 0}, out.primes);
            } else {
                auto [a, b] = detail::eisenstein_norm_form(p);
                auto p1 = ring.canonical_associate(EisenInt{a, b}).second;
                auto p2 = ring.canonical_associate(ring.conj(EisenInt{a, b})).second;
                detail::divide_out(ring, cur, p1, out.primes);
                if (!(p2 == p1)) detail::divide_out(ring, cur, p2, out.primes);
            }
        }
    } else {
        // polynomials: trial division by monic polynomials in code order
        for (int d = 1; 2 * d <= cur.degree();) {
            bool found = false;
            Int span = boost::multiprecision::pow(Int(ring.q()), static_cast<unsigned>(d));
            for (Int low = 0; low < span; ++low) {
                elem_t<R> g = ring.element_at(static_cast<std::uint64_t>(low));
                g.c.resize(static_cast<std::size_t>(d) + 1, 0);
                g.c[static_cast<std::size_t>(d)] = 1; // monic of degree d
                if (divides(ring, g, cur)) {
                    detail::divide_out(ring, cur, g, out.primes);
                    found = true;
                    break;
                }
            }
            if (!found) ++d;
        }
        if (cur.degree() >= 1) {
            auto [u, p] = ring.canonical_associate(cur);
            out.primes.emplace_back(p, 1);
            cur = exact_div(ring, cur, p);
        }
    }

    if (!ring.is_unit(cur)) throw Error("factorization incomplete");
    out.unit = cur;
    return out;
}

template <class R> elem_t<R> unit_inverse(const R& ring, const elem_t<R>& u) {
    for (const auto& v : ring.units())
        if (ring.mul(u, v) == ring.one()) return v;
    throw DegenerateInput("not a unit");
}

// all canonical divisors of m (including units' class 1 and m itself)
template <class R> std::vector<elem_t<R>> divisors(const R& ring, const elem_t<R>& m) {
    std::vector<elem_t<R>> out{ring.one()};
    if (ring.is_unit(m)) return out;
    auto f = factor(ring, m);
    for (auto& [p, e] : f.primes) {
        std::vector<elem_t<R>> next;
        elem_t<R> pk = ring.one();
        for (int j = 0; j <= e; ++j) {
            for (const auto& d : out) next.push_back(ring.canonical_associate(ring.mul(d, pk)).second);
            if (j < e) pk = ring.mul(pk, p);
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), [&](const elem_t<R>& a, const elem_t<R>& b) {
        Int na = ring.norm(a), nb = ring.norm(b);
        if (na != nb) return na < nb;
        return ring.cmp(a, b) < 0;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Chinese remainder splitting
// ---------------------------------------------------------------------------

template <class R> class CrtSplit {
  public:
    CrtSplit(const R& ring, const elem_t<R>& m) : ring_(ring) {
        if (ring.is_zero(m)) throw DegenerateInput("CRT of zero modulus");
        if (ring.is_unit(m)) throw DegenerateInput("CRT of a unit modulus");
        modulus_ = ring.canonical_associate(m).second;
        auto f = factor(ring, modulus_);
        for (auto& [p, e] : f.primes) {
            elem_t<R> q = ring.one();
            for (int j = 0; j < e; ++j) q = ring.mul(q, p);
            prime_powers_.push_back(ring.canonical_associate(q).second);
        }
        for (const auto& q : prime_powers_) {
            elem_t<R> rest = exact_div(ring, modulus_, q);
            auto bez = xgcd(ring, rest, q);
            if (!ring.is_unit(bez.g)) throw Error("prime powers not coprime");
            elem_t<R> ginv = unit_inverse(ring, bez.g);
            elem_t<R> idem = ring.mul(ring.mul(bez.s, rest), ginv);
            idempotents_.push_back(ring.canonical_residue(idem, modulus_));
        }
    }

    const elem_t<R>& modulus() const { return modulus_; }
    const std::vector<elem_t<R>>& prime_powers() const { return prime_powers_; }

    std::vector<elem_t<R>> forward(const elem_t<R>& r) const {
        std::vector<elem_t<R>> out;
        out.reserve(prime_powers_.size());
        for (const auto& q : prime_powers_) out.push_back(ring_.canonical_residue(r, q));
        return out;
    }

    elem_t<R> inverse(const std::vector<elem_t<R>>& parts) const {
        if (parts.size() != prime_powers_.size()) throw DomainError("wrong number of CRT components");
        elem_t<R> acc = ring_.zero();
        for (std::size_t i = 0; i < parts.size(); ++i)
            acc = ring_.add(acc, ring_.mul(parts[i], idempotents_[i]));
        return ring_.canonical_residue(acc, modulus_);
    }

  private:
    R ring_;
    elem_t<R> modulus_;
    std::vector<elem_t<R>> prime_powers_;
    std::vector<elem_t<R>> idempotents_;
};

template <class R> CrtSplit<R> crt_split(const R& ring, const elem_t<R>& m) { return CrtSplit<R>(ring, m); }

} // namespace ringstar
