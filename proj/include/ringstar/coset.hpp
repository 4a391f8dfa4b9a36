#pragma once

// Residue cosets d + (l). A Coset is stored canonically: the modulus is a
// canonical associate and the base is the canonical residue mod the modulus,
// so value equality coincides with equality of the underlying subsets of R.
// The whole ring is the coset 0 + (1).

#include <optional>
#include <vector>

#include "ringstar/errors.hpp"
#include "ringstar/fraction.hpp"
#include "ringstar/rings.hpp"

namespace ringstar {

template <class R> struct Coset {
    elem_t<R> base, mod;

    friend bool operator==(const Coset&, const Coset&) = default;
    friend bool operator<(const Coset& x, const Coset& y) {
        if (!(x.mod == y.mod)) return x.mod < y.mod;
        return x.base < y.base;
    }
};

template <class R> Coset<R> make_coset(const R& ring, const elem_t<R>& base, const elem_t<R>& mod) {
    if (ring.is_zero(mod)) throw DegenerateModulus();
    elem_t<R> mc = ring.canonical_associate(mod).second;
    return {ring.canonical_residue(base, mc), mc};
}

template <class R> Coset<R> whole_ring(const R& ring) { return {ring.zero(), ring.one()}; }

template <class R> bool is_whole_ring(const R& ring, const Coset<R>& c) { return ring.is_unit(c.mod); }

template <class R> bool coset_contains(const R& ring, const Coset<R>& c, const elem_t<R>& r) {
    return divides(ring, c.mod, ring.sub(r, c.base));
}

// d1+(l1) inside d2+(l2): l2 | l1 and d1 = d2 mod l2
template <class R> bool coset_subset(const R& ring, const Coset<R>& c1, const Coset<R>& c2) {
    return divides(ring, c2.mod, c1.mod) && coset_contains(ring, c2, c1.base);
}

template <class R> Coset<R> coset_translate(const R& ring, const Coset<R>& c, const elem_t<R>& t) {
    return make_coset(ring, ring.add(c.base, t), c.mod);
}

// w * (d + (l)) = wd + (wl), w != 0
template <class R> Coset<R> coset_scale(const R& ring, const Coset<R>& c, const elem_t<R>& w) {
    if (ring.is_zero(w)) throw DegenerateInput("scaling a coset by zero");
    return make_coset(ring, ring.mul(c.base, w), ring.mul(c.mod, w));
}

/// Intersection of two cosets: empty or a single coset mod lcm, solved via
/// the extended Euclidean algorithm.
template <class R>
std::optional<Coset<R>> coset_intersect(const R& ring, const Coset<R>& c1, const Coset<R>& c2) {
    auto bez = xgcd(ring, c1.mod, c2.mod); // g = s*l1 + t*l2
    elem_t<R> diff = ring.sub(c2.base, c1.base);
    if (!divides(ring, bez.g, diff)) return std::nullopt;
    elem_t<R> l = lcm_elem(ring, c1.mod, c2.mod);
    // x = d1 + l1*s*(d2-d1)/g satisfies both congruences
    elem_t<R> x = ring.add(c1.base, ring.mul(ring.mul(c1.mod, bez.s), exact_div(ring, diff, bez.g)));
    return make_coset(ring, x, l);
}

/// The norm(L)/norm(mod) pairwise-disjoint cosets mod L that partition c.
template <class R>
std::vector<Coset<R>> coset_refine(const R& ring, const Coset<R>& c, const elem_t<R>& level) {
    if (ring.is_zero(level)) throw DegenerateModulus();
    if (!divides(ring, c.mod, level)) throw RefinementMismatch("coset modulus does not divide the level");
    elem_t<R> ratio = exact_div(ring, level, c.mod);
    std::vector<Coset<R>> out;
    for (const auto& t : ring.residues(ratio))
        out.push_back(make_coset(ring, ring.add(c.base, ring.mul(c.mod, t)), level));
    return out;
}

/// Image of c under r -> a r + b. Defined only when the image set stays in R
/// (throws NotIntegral otherwise).
template <class R>
Coset<R> coset_affine_image(const R& ring, const Coset<R>& c, const Fraction<R>& a, const Fraction<R>& b) {
    if (frac_is_zero(ring, a)) throw DegenerateInput("affine map with a = 0");
    Fraction<R> nbase = frac_add(ring, frac_mul(ring, a, frac_from(ring, c.base)), b);
    Fraction<R> nmod = frac_mul(ring, a, frac_from(ring, c.mod));
    if (!frac_is_integral(ring, nbase) || !frac_is_integral(ring, nmod))
        throw NotIntegral("affine image leaves the ring");
    return make_coset(ring, nbase.num, nmod.num);
}

/// Preimage {r in R : a r + b in c}; empty or a coset.
template <class R>
std::optional<Coset<R>> coset_affine_preimage(const R& ring, const Coset<R>& c, const Fraction<R>& a,
                                              const Fraction<R>& b) {
    if (frac_is_zero(ring, a)) throw DegenerateInput("affine map with a = 0");
    // common denominator D: solve A r = D d - B  (mod D l)
    elem_t<R> D = lcm_elem(ring, a.den, b.den);
    elem_t<R> A = ring.mul(a.num, exact_div(ring, D, a.den));
    elem_t<R> B = ring.mul(b.num, exact_div(ring, D, b.den));
    elem_t<R> rhs = ring.sub(ring.mul(D, c.base), B);
    elem_t<R> M = ring.mul(D, c.mod);
    auto bez = xgcd(ring, A, M); // g = s*A + t*M
    if (!divides(ring, bez.g, rhs)) return std::nullopt;
    elem_t<R> r0 = ring.mul(bez.s, exact_div(ring, rhs, bez.g));
    return make_coset(ring, r0, exact_div(ring, M, bez.g));
}

enum class AffineDirection { image, preimage };

/// Spec-facing wrapper over image / preimage.
template <class R>
std::optional<Coset<R>> coset_affine(const R& ring, const Coset<R>& c, const Fraction<R>& a,
                                     const Fraction<R>& b, AffineDirection dir) {
    if (dir == AffineDirection::image) return coset_affine_image(ring, c, a, b);
    return coset_affine_preimage(ring, c, a, b);
}

template <class R> std::string coset_str(const R& ring, const Coset<R>& c) {
    return ring.str(c.base) + "+(" + ring.str(c.mod) + ")";
}

} // namespace ringstar
