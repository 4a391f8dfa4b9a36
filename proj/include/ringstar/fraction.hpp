#pragma once

// Elements of the quotient field Q(R), stored reduced with a canonical
// denominator. These carry the affine coefficients of partial maps.

#include <utility>

#include "ringstar/errors.hpp"
#include "ringstar/rings.hpp"

namespace ringstar {

template <class R> struct Fraction {
    elem_t<R> num, den; // gcd(num, den) a unit, den canonical, zero stored as 0/1
};

template <class R> Fraction<R> make_fraction(const R& ring, elem_t<R> num, elem_t<R> den) {
    if (ring.is_zero(den)) throw DegenerateInput("zero denominator");
    if (ring.is_zero(num)) return {ring.zero(), ring.one()};
    elem_t<R> g = gcd_elem(ring, num, den);
    num = exact_div(ring, num, g);
    den = exact_div(ring, den, g);
    auto [u, dc] = ring.canonical_associate(den);
    return {ring.mul(u, num), dc};
}

template <class R> Fraction<R> frac_from(const R& ring, const elem_t<R>& x) { return {x, ring.one()}; }
template <class R> Fraction<R> frac_zero(const R& ring) { return {ring.zero(), ring.one()}; }
template <class R> Fraction<R> frac_one(const R& ring) { return {ring.one(), ring.one()}; }

template <class R> bool frac_is_zero(const R& ring, const Fraction<R>& f) { return ring.is_zero(f.num); }
template <class R> bool frac_is_integral(const R& ring, const Fraction<R>& f) { return f.den == ring.one(); }
template <class R> bool frac_is_one(const R& ring, const Fraction<R>& f) {
    return f.num == ring.one() && f.den == ring.one();
}

template <class R> Fraction<R> frac_add(const R& ring, const Fraction<R>& x, const Fraction<R>& y) {
    return make_fraction(ring, ring.add(ring.mul(x.num, y.den), ring.mul(y.num, x.den)),
                         ring.mul(x.den, y.den));
}
template <class R> Fraction<R> frac_sub(const R& ring, const Fraction<R>& x, const Fraction<R>& y) {
    return make_fraction(ring, ring.sub(ring.mul(x.num, y.den), ring.mul(y.num, x.den)),
                         ring.mul(x.den, y.den));
}
template <class R> Fraction<R> frac_mul(const R& ring, const Fraction<R>& x, const Fraction<R>& y) {
    return make_fraction(ring, ring.mul(x.num, y.num), ring.mul(x.den, y.den));
}
template <class R> Fraction<R> frac_div(const R& ring, const Fraction<R>& x, const Fraction<R>& y) {
    if (frac_is_zero(ring, y)) throw DegenerateInput("division by zero fraction");
    return make_fraction(ring, ring.mul(x.num, y.den), ring.mul(x.den, y.num));
}
template <class R> Fraction<R> frac_neg(const R& ring, const Fraction<R>& x) {
    return {ring.neg(x.num), x.den};
}

template <class R> bool frac_eq(const Fraction<R>& x, const Fraction<R>& y) {
    return x.num == y.num && x.den == y.den; // both reduced and canonical
}

template <class R> int frac_cmp(const R& ring, const Fraction<R>& x, const Fraction<R>& y) {
    if (int c = ring.cmp(x.den, y.den)) return c;
    return ring.cmp(x.num, y.num);
}

template <class R> std::string frac_str(const R& ring, const Fraction<R>& f) {
    if (f.den == ring.one()) return ring.str(f.num);
    return ring.str(f.num) + "/" + ring.str(f.den);
}

} // namespace ringstar
