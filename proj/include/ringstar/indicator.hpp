#pragma once

// Finite linear combinations of coset indicators: the dense diagonal
// subalgebra. Scalars are exact complex rationals. Atom form refines every
// coset to the lcm of the occurring moduli; conductor form additionally
// coarsens to the minimal level at which the function is periodic.

#include <map>
#include <vector>

#include "ringstar/coset.hpp"
#include "ringstar/errors.hpp"
#include "ringstar/factor.hpp"
#include "ringstar/scalar.hpp"

namespace ringstar {

// Guard for runaway refinements; desk-scale inputs never get close.
inline constexpr std::uint64_t kRefineCap = 1u << 21;

// Conductor coarsening factors the common level, so skip it when the level
// norm makes trial division expensive. Equality testing does not need it.
inline const Int kCoarsenNormCap = Int(1) << 40;

template <class R> class Indicator {
  public:
    using Term = std::pair<Coset<R>, Scalar>;

    Indicator() = default;

    static Indicator zero() { return {}; }
    static Indicator one(const R& ring) { return single(whole_ring(ring), Scalar(1)); }
    static Indicator single(const Coset<R>& c, const Scalar& s) {
        Indicator x;
        if (!s.is_zero()) x.terms_.emplace(c, s);
        return x;
    }

    bool empty() const { return terms_.empty(); }
    const std::map<Coset<R>, Scalar>& terms() const { return terms_; }

    void add_term(const Coset<R>& c, const Scalar& s) {
        if (s.is_zero()) return;
        auto [it, inserted] = terms_.emplace(c, s);
        if (!inserted) {
            it->second += s;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Indicator operator+(const Indicator& x, const Indicator& y) {
        Indicator out = x;
        for (const auto& [c, s] : y.terms_) out.add_term(c, s);
        return out;
    }
    friend Indicator operator-(const Indicator& x, const Indicator& y) {
        Indicator out = x;
        for (const auto& [c, s] : y.terms_) out.add_term(c, -s);
        return out;
    }

    Indicator scaled(const Scalar& s) const {
        Indicator out;
        if (s.is_zero()) return out;
        for (const auto& [c, v] : terms_) out.terms_.emplace(c, v * s);
        return out;
    }

    // pointwise product: indicators multiply through coset intersection
    Indicator mul(const R& ring, const Indicator& y) const {
        Indicator out;
        for (const auto& [c1, s1] : terms_)
            for (const auto& [c2, s2] : y.terms_)
                if (auto c = coset_intersect(ring, c1, c2)) out.add_term(*c, s1 * s2);
        return out;
    }

    elem_t<R> common_level(const R& ring) const {
        elem_t<R> lev = ring.one();
        for (const auto& [c, s] : terms_) {
            (void)s;
            lev = lcm_elem(ring, lev, c.mod);
        }
        return lev;
    }

    /// Atom form: all cosets refined to the lcm of occurring moduli,
    /// coefficients merged, zeros dropped.
    Indicator atoms(const R& ring) const {
        if (terms_.empty()) return {};
        elem_t<R> lev = common_level(ring);
        Indicator out;
        for (const auto& [c, s] : terms_) {
            Int ratio = ring.norm(lev) / ring.norm(c.mod);
            if (ratio > kRefineCap) throw DomainError("refinement cap exceeded");
            for (const auto& a : coset_refine(ring, c, lev)) out.add_term(a, s);
        }
        return out;
    }

    /// Atom form at the minimal level: repeatedly drop primes of the level
    /// with respect to which the coefficient function is periodic. Skipped
    /// (atom form returned) when the level is too large to factor quickly.
    Indicator conductor_form(const R& ring) const {
        Indicator at = atoms(ring);
        if (at.terms_.empty()) return at;
        elem_t<R> lev = at.terms_.begin()->first.mod;
        if (ring.norm(lev) > kCoarsenNormCap) return at;
        bool changed = true;
        while (changed && !ring.is_unit(lev)) {
            changed = false;
            for (const auto& [p, e] : factor(ring, lev).primes) {
                (void)e;
                elem_t<R> down = ring.canonical_associate(exact_div(ring, lev, p)).second;
                Int fiber = ring.norm(p);
                // group atoms by their class mod the coarser level
                std::map<elem_t<R>, std::pair<Scalar, Int>> groups;
                bool ok = true;
                for (const auto& [c, s] : at.terms_) {
                    elem_t<R> rep = ring.canonical_residue(c.base, down);
                    auto [it, inserted] = groups.emplace(rep, std::make_pair(s, Int(1)));
                    if (!inserted) {
                        if (!(it->second.first == s)) { ok = false; break; }
                        it->second.second += 1;
                    }
                }
                if (!ok) continue;
                for (const auto& [rep, sc] : groups)
                    if (sc.second != fiber) { ok = false; break; }
                if (!ok) continue;
                Indicator next;
                for (const auto& [rep, sc] : groups) next.add_term(make_coset(ring, rep, down), sc.first);
                at = next;
                lev = down;
                changed = true;
                break;
            }
        }
        return at;
    }

    bool is_zero(const R& ring) const { return atoms(ring).empty(); }

    /// Squared sup-norm over atoms; exact. Equals the square of the C*-norm
    /// of the diagonal element, since distinct atoms are orthogonal.
    Rat sup_norm_squared(const R& ring) const {
        Rat best(0);
        for (const auto& [c, s] : atoms(ring).terms_) {
            (void)c;
            Rat a = s.abs_sq();
            if (a > best) best = a;
        }
        return best;
    }

    /// Exact sup-norm; requires the squared norm to be a rational square
    /// (always true for rational coefficients).
    Rat sup_norm(const R& ring) const {
        Rat out;
        if (!rational_sqrt(sup_norm_squared(ring), out))
            throw DomainError("sup-norm is irrational for this combination");
        return out;
    }

    /// Value of the associated function on R/(M) at `point`. Every stored
    /// modulus must divide M.
    Scalar gelfand(const R& ring, const elem_t<R>& level, const elem_t<R>& point) const {
        Scalar out;
        for (const auto& [c, s] : terms_) {
            if (!divides(ring, c.mod, level))
                throw RefinementMismatch("indicator modulus does not divide the evaluation level");
            if (coset_contains(ring, c, point)) out += s;
        }
        return out;
    }

    friend bool operator==(const Indicator& x, const Indicator& y) { return x.terms_ == y.terms_; }

  private:
    std::map<Coset<R>, Scalar> terms_;
};

/// Atom form together with the exact sup-norm.
template <class R>
std::pair<Indicator<R>, Rat> indicator_normalize(const R& ring, const Indicator<R>& x) {
    Indicator<R> at = x.atoms(ring);
    return {at, at.sup_norm(ring)};
}

template <class R> std::string indicator_str(const R& ring, const Indicator<R>& x) {
    if (x.terms().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [c, s] : x.terms()) {
        if (!first) out += " + ";
        first = false;
        out += scalar_str(s) + "*p[" + coset_str(ring, c) + "]";
    }
    return out;
}

} // namespace ringstar
