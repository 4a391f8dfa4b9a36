#pragma once

// Finite-level classes of the adele model: a level tag m together with a
// truncated completion value x stands for the class of x/m, glued along
// m x_l = l y_m. The ax+b group over the quotient field acts by affine
// transformations, tracked on cosets with an explicit denominator shift.

#include <vector>

#include "ringstar/coset.hpp"
#include "ringstar/fraction.hpp"
#include "ringstar/profinite.hpp"

namespace ringstar {

template <class R> struct Adele {
    elem_t<R> level;  // iota index, canonical associate
    Tower<R> value;
};

/// Canonical form: greedily divide the level and the value by common primes.
/// Divisibility of the value by p is its level-p residue being zero; the
/// divided tower keeps the levels whose p-multiple was stored.
template <class R> Adele<R> adele_canonicalize(const R& ring, Adele<R> x) {
    bool changed = true;
    while (changed && !ring.is_unit(x.level)) {
        changed = false;
        for (const auto& [p, e] : factor(ring, x.level).primes) {
            (void)e;
            auto it = x.value.residue.find(p);
            if (it == x.value.residue.end()) continue;     // cannot certify divisibility
            if (!ring.is_zero(it->second)) continue;       // value not divisible by p
            Tower<R> down;
            for (const auto& lev : x.value.levels) {
                if (!divides(ring, p, lev)) continue;
                elem_t<R> nl = ring.canonical_associate(exact_div(ring, lev, p)).second;
                down.levels.push_back(nl);
                down.residue[nl] =
                    ring.canonical_residue(exact_div(ring, x.value.residue.at(lev), p), nl);
            }
            if (down.levels.empty()) continue;
            std::sort(down.levels.begin(), down.levels.end(),
                      [&](const elem_t<R>& a, const elem_t<R>& b) {
                          Int na = ring.norm(a), nb = ring.norm(b);
                          if (na != nb) return na < nb;
                          return ring.cmp(a, b) < 0;
                      });
            down.levels.erase(std::unique(down.levels.begin(), down.levels.end()), down.levels.end());
            x.value = down;
            x.level = ring.canonical_associate(exact_div(ring, x.level, p)).second;
            changed = true;
            break;
        }
    }
    return x;
}

template <class R>
Adele<R> make_adele(const R& ring, const elem_t<R>& level, const Tower<R>& value) {
    if (ring.is_zero(level)) throw DegenerateInput("zero adele level");
    Adele<R> x{ring.canonical_associate(level).second, value};
    return adele_canonicalize(ring, x);
}

enum class AdeleOp { add, mul };

/// iota_m(x) + iota_l(y) = iota_{lm}(l x + m y);  iota_m(x) iota_l(y) = iota_{lm}(x y).
template <class R>
Adele<R> adele_arith(const R& ring, const Adele<R>& x, const Adele<R>& y, AdeleOp op) {
    elem_t<R> level = ring.mul(x.level, y.level);
    Tower<R> value;
    if (op == AdeleOp::add) {
        Tower<R> xs = tower_scale(ring, x.value, y.level);
        Tower<R> ys = tower_scale(ring, y.value, x.level);
        value = tower_combine(ring, xs, ys, TowerOp::add);
    } else {
        value = tower_combine(ring, x.value, y.value, TowerOp::mul);
    }
    return make_adele(ring, level, value);
}

/// Same class at the shared precision: m_y x = m_x y levelwise.
template <class R> bool adele_equal(const R& ring, const Adele<R>& x, const Adele<R>& y) {
    Tower<R> xs = tower_scale(ring, x.value, y.level);
    Tower<R> ys = tower_scale(ring, y.value, x.level);
    bool any = false;
    for (const auto& l : xs.levels) {
        auto it = ys.residue.find(l);
        if (it == ys.residue.end()) continue;
        any = true;
        if (!(xs.residue.at(l) == it->second)) return false;
    }
    return any;
}

// ---------------------------------------------------------------------------
// The ax+b group over Q(R)
// ---------------------------------------------------------------------------

template <class R> struct AxB {
    Fraction<R> a, b; // r -> a r + b, a != 0
};

template <class R> AxB<R> make_axb(const R& ring, const Fraction<R>& a, const Fraction<R>& b) {
    if (frac_is_zero(ring, a)) throw DegenerateInput("ax+b with a = 0");
    return {a, b};
}

template <class R> AxB<R> axb_identity(const R& ring) { return {frac_one(ring), frac_zero(ring)}; }

template <class R> AxB<R> axb_compose(const R& ring, const AxB<R>& g1, const AxB<R>& g2) {
    return {frac_mul(ring, g1.a, g2.a), frac_add(ring, frac_mul(ring, g1.a, g2.b), g1.b)};
}

template <class R> AxB<R> axb_inverse(const R& ring, const AxB<R>& g) {
    Fraction<R> ainv = frac_div(ring, frac_one(ring), g.a);
    return {ainv, frac_neg(ring, frac_mul(ring, ainv, g.b))};
}

/// A coset scaled into a deeper level copy: the set (1/shift) * data.
template <class R> struct ScaledCoset {
    elem_t<R> shift;
    Coset<R> data;
};

template <class R>
bool scaled_coset_equal(const R& ring, const ScaledCoset<R>& x, const ScaledCoset<R>& y) {
    return coset_scale(ring, x.data, y.shift) == coset_scale(ring, y.data, x.shift);
}

template <class R> struct AxbActResult {
    ScaledCoset<R> image;        // minimal-shift representation of a c + b
    elem_t<R> denominator_shift; // level shift induced by the denominators of (a, b)
};

/// Image of a scaled coset under r -> a r + b, with the minimal shift that
/// keeps the data integral.
template <class R>
ScaledCoset<R> axb_act_scaled(const R& ring, const AxB<R>& g, const ScaledCoset<R>& c) {
    Fraction<R> scale = make_fraction(ring, c.data.mod, c.shift); // modulus of the set
    Fraction<R> base = make_fraction(ring, c.data.base, c.shift);
    Fraction<R> nbase = frac_add(ring, frac_mul(ring, g.a, base), g.b);
    Fraction<R> nmod = frac_mul(ring, g.a, scale);
    elem_t<R> q = lcm_elem(ring, nbase.den, nmod.den);
    elem_t<R> ibase = ring.mul(nbase.num, exact_div(ring, q, nbase.den));
    elem_t<R> imod = ring.mul(nmod.num, exact_div(ring, q, nmod.den));
    return {q, make_coset(ring, ibase, imod)};
}

template <class R>
AxbActResult<R> axb_act(const R& ring, const AxB<R>& g, const Coset<R>& c) {
    AxbActResult<R> out;
    out.image = axb_act_scaled(ring, g, ScaledCoset<R>{ring.one(), c});
    out.denominator_shift = lcm_elem(ring, g.a.den, g.b.den);
    return out;
}

template <class R> std::string scaled_coset_str(const R& ring, const ScaledCoset<R>& c) {
    if (c.shift == ring.one()) return coset_str(ring, c.data);
    return coset_str(ring, c.data) + " / " + ring.str(c.shift);
}

} // namespace ringstar
