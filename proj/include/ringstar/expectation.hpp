#pragma once

// The conditional expectation onto the diagonal subalgebra, its two partial
// layers, the separating-projection construction that realizes it by
// compression, and the isometry witness extracted from an element of
// diagonal norm one.

#include <set>
#include <vector>

#include "ringstar/algebra.hpp"
#include "ringstar/oracle.hpp"

namespace ringstar {

enum class ExpectationMode { full, multiplicative, additive };

/// full: keep affine part (1, 0); multiplicative: keep a = 1;
/// additive: defined on the range of the multiplicative mode, keep b = 0.
template <class R>
AlgebraElement<R> expectation(const R& ring, const AlgebraElement<R>& x, ExpectationMode mode) {
    std::vector<typename AlgebraElement<R>::Term> kept;
    for (const auto& [t, s] : x.terms()) {
        const bool a_is_one = (t.mp == t.m);
        const bool b_is_zero = ring.is_zero(t.k);
        switch (mode) {
        case ExpectationMode::full:
            if (a_is_one && b_is_zero) kept.emplace_back(t, s);
            break;
        case ExpectationMode::multiplicative:
            if (a_is_one) kept.emplace_back(t, s);
            break;
        case ExpectationMode::additive:
            if (!a_is_one)
                throw DomainError("additive expectation applied outside the multiplicative range");
            if (b_is_zero) kept.emplace_back(t, s);
            break;
        }
    }
    return AlgebraElement<R>::from_terms(ring, kept);
}

// ---------------------------------------------------------------------------
// Separating projections
// ---------------------------------------------------------------------------

template <class R> struct SeparatingFamily {
    elem_t<R> level;                   // common level M (lcm of occurring moduli)
    std::vector<elem_t<R>> atoms;      // bases n_i of the level-M atoms, transversal order
    std::vector<elem_t<R>> shifts;     // nu_i, nu_i = n_i mod M
    elem_t<R> mu;                      // mu in (M)
    std::vector<Coset<R>> projections; // f_i = nu_i + (mu)
};

/// Computes the common level, the atoms under the occurring projections,
/// shifts nu_i avoiding every critical exclusion, and the modulus mu that
/// kills all critical compressions:
///   nu_i = n_i mod M,  mu in (M),  k + nu_i(m' - m) not in (mu).
/// The last family of conditions is verified exactly before returning.
template <class R> SeparatingFamily<R> choose_separating(const R& ring, const AlgebraElement<R>& y) {
    SeparatingFamily<R> fam;
    fam.level = ring.one();
    for (const auto& [t, s] : y.terms()) {
        (void)s;
        fam.level = lcm_elem(ring, fam.level, t.c.mod);
    }
    if (ring.norm(fam.level) > kRefineCap) throw DomainError("common level too large");

    // critical terms: affine part differs from (1, 0)
    struct Critical {
        elem_t<R> k, delta; // exclusion value k + nu * delta, delta = m' - m
    };
    std::vector<Critical> critical;
    for (const auto& [t, s] : y.terms()) {
        (void)s;
        if (t.mp == t.m && ring.is_zero(t.k)) continue;
        critical.push_back({t.k, ring.sub(t.mp, t.m)});
    }

    // the atoms of the occurring projections at level M
    for (const auto& base : ring.residues(fam.level)) {
        bool hit = false;
        for (const auto& [t, s] : y.terms()) {
            (void)s;
            if (coset_contains(ring, t.c, base)) { hit = true; break; }
        }
        if (hit) fam.atoms.push_back(base);
    }

    // shift values that every critical index must avoid
    std::vector<elem_t<R>> banned;
    for (const auto& c : critical) {
        if (ring.is_zero(c.delta)) continue; // value is k != 0 independently of nu
        if (divides(ring, c.delta, c.k)) banned.push_back(ring.neg(exact_div(ring, c.k, c.delta)));
    }

    for (const auto& n : fam.atoms) {
        elem_t<R> nu;
        for (std::uint64_t idx = 0;; ++idx) {
            nu = ring.add(n, ring.mul(fam.level, ring.element_at(idx)));
            bool bad = false;
            for (const auto& b : banned)
                if (nu == b) { bad = true; break; }
            if (!bad) break;
        }
        fam.shifts.push_back(nu);
    }

    // mu = r * M * prod over critical indices of the largest-norm exclusion
    // value; the norm growth makes every exclusion value a proper divisor.
    elem_t<R> mu = ring.mul(ring.smallest_prime(), fam.level);
    for (const auto& c : critical) {
        elem_t<R> best = ring.zero();
        Int best_norm = -1;
        for (const auto& nu : fam.shifts) {
            elem_t<R> v = ring.add(c.k, ring.mul(nu, c.delta));
            Int n = ring.norm(v);
            if (n > best_norm) { best_norm = n; best = v; }
        }
        if (best_norm >= 0) mu = ring.mul(mu, best);
    }
    fam.mu = ring.canonical_associate(mu).second;

    if (!divides(ring, fam.level, fam.mu)) throw Error("mu escaped the level ideal");
    for (std::size_t i = 0; i < fam.atoms.size(); ++i) {
        if (!divides(ring, fam.level, ring.sub(fam.shifts[i], fam.atoms[i])))
            throw Error("shift left its residue class");
        for (const auto& c : critical) {
            elem_t<R> v = ring.add(c.k, ring.mul(fam.shifts[i], c.delta));
            if (divides(ring, fam.mu, v)) throw Error("critical exclusion failed");
        }
    }

    for (const auto& nu : fam.shifts) fam.projections.push_back(make_coset(ring, nu, fam.mu));
    return fam;
}

template <class R>
void require_orthogonal_family(const R& ring, const std::vector<Coset<R>>& projections) {
    bool same_mod = true;
    for (std::size_t i = 1; i < projections.size(); ++i)
        if (!(projections[i].mod == projections[0].mod)) { same_mod = false; break; }
    if (same_mod) {
        std::set<elem_t<R>> bases;
        for (const auto& f : projections)
            if (!bases.insert(f.base).second)
                throw InvalidProjectionFamily("repeated projection in the family");
        return;
    }
    for (std::size_t i = 0; i < projections.size(); ++i)
        for (std::size_t j = i + 1; j < projections.size(); ++j)
            if (coset_intersect(ring, projections[i], projections[j]))
                throw InvalidProjectionFamily("projections overlap");
}

/// sum_i f_i y f_i for a pairwise orthogonal family of coset projections.
template <class R>
AlgebraElement<R> compress_phi(const R& ring, const AlgebraElement<R>& y,
                               const std::vector<Coset<R>>& projections) {
    require_orthogonal_family(ring, projections);
    std::vector<typename AlgebraElement<R>::Term> raw;
    for (const auto& f : projections) {
        auto p = gen_coset_projection(ring, f);
        auto piece = multiply(ring, multiply(ring, p, y), p);
        for (const auto& term : piece.terms()) raw.push_back(term);
    }
    return AlgebraElement<R>::from_terms(ring, raw);
}

/// The image of the diagonal part of y under the isomorphism sending the
/// level-M atom at n_i to f_i.
template <class R>
AlgebraElement<R> phi_of_expectation(const R& ring, const AlgebraElement<R>& y,
                                     const SeparatingFamily<R>& fam) {
    Indicator<R> diag = expectation(ring, y, ExpectationMode::full).diagonal_part(ring);
    std::vector<typename AlgebraElement<R>::Term> raw;
    for (std::size_t i = 0; i < fam.atoms.size(); ++i) {
        Scalar lambda = diag.gelfand(ring, fam.level, fam.atoms[i]);
        if (!lambda.is_zero())
            raw.emplace_back(projection_monomial(ring, fam.projections[i]), lambda);
    }
    return AlgebraElement<R>::from_terms(ring, raw);
}

// ---------------------------------------------------------------------------
// Isometry witness
// ---------------------------------------------------------------------------

template <class R> struct WitnessResult {
    AlgebraElement<R> s; // u^{nu_j} s_mu
    elem_t<R> nu, mu;
    std::size_t atom_index = 0;
    SeparatingFamily<R> family;
};

/// For self-adjoint y whose diagonal has exact sup-norm 1, returns the
/// isometry s with s^* s = 1, s s^* = f_j and s^* y s = 1.
template <class R> WitnessResult<R> pi_witness(const R& ring, const AlgebraElement<R>& y) {
    if (!equal(ring, y, adjoint(ring, y))) throw DomainError("witness input is not self-adjoint");

    SeparatingFamily<R> fam = choose_separating(ring, y);
    Indicator<R> diag = expectation(ring, y, ExpectationMode::full).diagonal_part(ring);

    std::size_t j = fam.atoms.size();
    for (std::size_t i = 0; i < fam.atoms.size(); ++i) {
        if (diag.gelfand(ring, fam.level, fam.atoms[i]).is_one()) { j = i; break; }
    }
    if (j == fam.atoms.size())
        throw WitnessNotFound("no compressed coefficient equals 1 (diagonal norm differs from 1?)");

    WitnessResult<R> out;
    out.nu = fam.shifts[j];
    out.mu = fam.mu;
    out.atom_index = j;
    out.s = multiply(ring, gen_unitary(ring, out.nu), gen_iso(ring, out.mu));
    out.family = fam;

    auto sstar = adjoint(ring, out.s);
    if (!equal(ring, multiply(ring, sstar, out.s), AlgebraElement<R>::one(ring)))
        throw WitnessNotFound("witness is not an isometry");
    if (!equal(ring, multiply(ring, out.s, sstar),
               gen_coset_projection(ring, fam.projections[j])))
        throw WitnessNotFound("witness range projection mismatch");
    if (!equal(ring, multiply(ring, multiply(ring, sstar, y), out.s), AlgebraElement<R>::one(ring)))
        throw WitnessNotFound("compression of the input by the witness is not 1");
    return out;
}

} // namespace ringstar
