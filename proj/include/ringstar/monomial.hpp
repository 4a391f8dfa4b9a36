#pragma once

// Canonical monomials of the dense *-subalgebra. A monomial (m, c, k, m')
// denotes the word  s_m^* p_c u^k s_{m'}  subject to
//     c inside (m),   c inside k + (m'),   gcd(m, m') a unit,
// with m a canonical associate. Under these constraints the monomial is in
// bijection with its partial affine map  r -> (m'/m) r + k/m  restricted to
// the preimage of c, which is what makes representation equality usable as
// operator equality.

#include <optional>
#include <tuple>

#include "ringstar/coset.hpp"
#include "ringstar/errors.hpp"
#include "ringstar/fraction.hpp"
#include "ringstar/rings.hpp"

namespace ringstar {

template <class R> struct Monomial {
    elem_t<R> m;   // left isometry index, canonical associate
    Coset<R> c;    // middle projection
    elem_t<R> k;   // unitary exponent
    elem_t<R> mp;  // right isometry index (carries the unit class)

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& x, const Monomial& y) {
        return std::tie(x.m, x.mp, x.k, x.c) < std::tie(y.m, y.mp, y.k, y.c);
    }
};

/// Partial affine map of the regular representation: r -> a r + b on a
/// domain coset, with a*domain + b contained in R.
template <class R> struct PartialAffineMap {
    Fraction<R> a, b;
    Coset<R> domain;
};

/// Rewrites raw word data to the canonical monomial, or nothing when the
/// constrained coset is empty (the zero operator).
template <class R>
std::optional<Monomial<R>> term_normalize(const R& ring, const elem_t<R>& m_raw, const Coset<R>& c_raw,
                                          const elem_t<R>& k_raw, const elem_t<R>& mp_raw) {
    if (ring.is_zero(m_raw) || ring.is_zero(mp_raw)) throw DegenerateInput("zero isometry index");

    auto c1 = coset_intersect(ring, c_raw, Coset<R>{ring.zero(), ring.canonical_associate(m_raw).second});
    if (!c1) return std::nullopt;
    auto c2 = coset_intersect(ring, *c1, make_coset(ring, k_raw, mp_raw));
    if (!c2) return std::nullopt;

    // strip the common factor (s_t^* s_t = 1 cancellation), then fix the
    // unit so the left index is canonical
    elem_t<R> t = gcd_elem(ring, m_raw, mp_raw);
    elem_t<R> m = exact_div(ring, m_raw, t);
    elem_t<R> mp = exact_div(ring, mp_raw, t);
    elem_t<R> k = exact_div(ring, k_raw, t);
    elem_t<R> base = exact_div(ring, c2->base, t);
    elem_t<R> mod = exact_div(ring, c2->mod, t);

    auto [u, mc] = ring.canonical_associate(m);
    return Monomial<R>{mc, make_coset(ring, ring.mul(u, base), ring.mul(u, mod)), ring.mul(u, k),
                       ring.mul(u, mp)};
}

template <class R> PartialAffineMap<R> to_affine(const R& ring, const Monomial<R>& t) {
    Fraction<R> a = make_fraction(ring, t.mp, t.m);
    Fraction<R> b = make_fraction(ring, t.k, t.m);
    auto dom = coset_affine_preimage(ring, t.c, frac_from(ring, t.mp), frac_from(ring, t.k));
    if (!dom) throw Error("canonical monomial with empty domain");
    return {a, b, *dom};
}

template <class R> Monomial<R> from_affine(const R& ring, const PartialAffineMap<R>& map) {
    if (frac_is_zero(ring, map.a)) throw DegenerateInput("affine part with a = 0");
    elem_t<R> m = lcm_elem(ring, map.a.den, map.b.den);
    elem_t<R> mp = ring.mul(map.a.num, exact_div(ring, m, map.a.den));
    elem_t<R> k = ring.mul(map.b.num, exact_div(ring, m, map.b.den));
    Coset<R> c = make_coset(ring, ring.add(ring.mul(mp, map.domain.base), k),
                            ring.mul(mp, map.domain.mod));
    if (!divides(ring, m, c.base) || !divides(ring, m, c.mod))
        throw NotIntegral("affine map image leaves the ring");
    return Monomial<R>{m, c, k, mp};
}

/// Identity monomial restricted to a coset: the projection p_c.
template <class R> Monomial<R> projection_monomial(const R& ring, const Coset<R>& c) {
    return Monomial<R>{ring.one(), c, ring.zero(), ring.one()};
}

template <class R> bool is_diagonal(const R& ring, const Monomial<R>& t) {
    return t.m == ring.one() && t.mp == ring.one() && ring.is_zero(t.k);
}

// affine part is (1, 0): kept by the full conditional expectation
template <class R> bool has_identity_affine_part(const R& ring, const Monomial<R>& t) {
    return t.mp == t.m && ring.is_zero(t.k);
}

template <class R> Monomial<R> monomial_adjoint(const R& ring, const Monomial<R>& t) {
    auto adj = term_normalize(ring, t.mp, coset_translate(ring, t.c, ring.neg(t.k)), ring.neg(t.k), t.m);
    if (!adj) throw Error("adjoint of a canonical monomial vanished");
    return *adj;
}

template <class R> std::string monomial_str(const R& ring, const Monomial<R>& t) {
    std::string out;
    auto emit = [&](const std::string& piece) {
        if (!out.empty()) out += " ";
        out += piece;
    };
    if (!(t.m == ring.one())) emit("s[" + ring.str(t.m) + "]*");
    if (!is_whole_ring(ring, t.c)) emit("p[" + coset_str(ring, t.c) + "]");
    if (!ring.is_zero(t.k)) emit("u[" + ring.str(t.k) + "]");
    if (!(t.mp == ring.one())) emit("s[" + ring.str(t.mp) + "]");
    if (out.empty()) out = "u[" + ring.str(ring.zero()) + "]";
    return out;
}

} // namespace ringstar
