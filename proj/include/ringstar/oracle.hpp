#pragma once

// Independent brute-force semantics on l^2(R): a monomial s_m^* p_c u^k s_m'
// acts on a basis vector by applying its generator word step by step. This
// path shares no code with the symbolic product and is used to cross-check
// every symbolic identity on finite windows.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "ringstar/algebra.hpp"

namespace ringstar {

/// xi_r -> xi_{(m' r + k)/m} when m' r + k lies in c, nothing otherwise.
template <class R>
std::optional<elem_t<R>> apply_monomial(const R& ring, const Monomial<R>& t, const elem_t<R>& r) {
    elem_t<R> x = ring.mul(t.mp, r);      // s_{m'}
    x = ring.add(x, t.k);                 // u^k
    if (!coset_contains(ring, t.c, x)) return std::nullopt; // p_c
    if (!divides(ring, t.m, x)) return std::nullopt;        // s_m^* annihilates outside mR
    return exact_div(ring, x, t.m);
}

/// Exact image of xi_r: weighted basis vectors, coefficients merged, sorted.
template <class R>
std::vector<std::pair<Scalar, elem_t<R>>> apply_element(const R& ring, const AlgebraElement<R>& x,
                                                        const elem_t<R>& r) {
    std::map<elem_t<R>, Scalar> acc;
    for (const auto& [t, s] : x.terms()) {
        if (auto image = apply_monomial(ring, t, r)) {
            auto [it, inserted] = acc.emplace(*image, s);
            if (!inserted) it->second += s;
        }
    }
    std::vector<std::pair<Scalar, elem_t<R>>> out;
    for (auto& [pt, s] : acc)
        if (!s.is_zero()) out.emplace_back(s, pt);
    return out;
}

/// <xi_target, x xi_r>
template <class R>
Scalar matrix_entry(const R& ring, const AlgebraElement<R>& x, const elem_t<R>& r,
                    const elem_t<R>& target) {
    Scalar out;
    for (const auto& [t, s] : x.terms()) {
        auto image = apply_monomial(ring, t, r);
        if (image && *image == target) out += s;
    }
    return out;
}

/// Finite window {r : N(r) <= bound} in enumeration order.
template <class R> struct Window {
    Int bound;
    std::vector<elem_t<R>> points;
};

template <class R> Window<R> make_window(const R& ring, const Int& bound) {
    return {bound, elements_up_to_norm(ring, bound)};
}

/// Pointwise agreement of two elements on every window vector, with exact
/// scalars. Agreement on a window containing a full residue system for the
/// lcm of all occurring moduli, combined with equality of the finitely many
/// affine parts, certifies equality of the elements; the tests choose their
/// window bounds accordingly.
template <class R>
bool oracle_equal(const R& ring, const AlgebraElement<R>& x, const AlgebraElement<R>& y,
                  const Window<R>& w) {
    for (const auto& r : w.points)
        if (apply_element(ring, x, r) != apply_element(ring, y, r)) return false;
    return true;
}

} // namespace ringstar
