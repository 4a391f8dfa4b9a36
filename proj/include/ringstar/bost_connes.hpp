#pragma once

// The generator-and-relation presentation living inside the ring algebra
// for class-number-one number rings with at most one real place: unit-orbit
// projections f(m, n), isometries s_p indexed by canonical associates, the
// orbit-level relations, and the finite Galois-parameter families feeding
// the basis representations. The rational integers use the positive cone,
// so their orbit unit group is trivial; function fields are rejected.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ringstar/algebra.hpp"
#include "ringstar/profinite.hpp"

namespace ringstar {

template <class R> const std::vector<elem_t<R>>& bc_unit_group(const R& ring) {
    static_assert(R::is_number_ring, "orbit combinatorics needs a number ring");
    if constexpr (R::kind == RingKind::integers) {
        static const std::vector<elem_t<R>> positive{Int(1)};
        return positive;
    } else {
        return ring.units();
    }
}

template <class R> struct UnitOrbit {
    elem_t<R> modulus;
    std::vector<elem_t<R>> members; // sorted residues
    elem_t<R> rep;                  // least member in the ring order
};

template <class R> UnitOrbit<R> orbit_of(const R& ring, const elem_t<R>& m, const elem_t<R>& r) {
    if (ring.is_zero(m)) throw DegenerateModulus();
    elem_t<R> mc = ring.canonical_associate(m).second;
    std::set<elem_t<R>> seen;
    for (const auto& u : bc_unit_group(ring))
        seen.insert(ring.canonical_residue(ring.mul(u, r), mc));
    UnitOrbit<R> orb;
    orb.modulus = mc;
    orb.members.assign(seen.begin(), seen.end());
    orb.rep = orb.members.front();
    return orb;
}

/// Full orbit partition of the residues mod m under the orbit unit group.
template <class R> std::vector<UnitOrbit<R>> unit_orbits(const R& ring, const elem_t<R>& m) {
    if constexpr (!R::is_number_ring)
        throw UnsupportedRing("unit orbits are defined for number rings only");
    if (ring.is_zero(m)) throw DegenerateModulus();
    std::vector<UnitOrbit<R>> out;
    std::set<elem_t<R>> seen;
    for (const auto& r : ring.residues(m)) {
        if (seen.count(r)) continue;
        UnitOrbit<R> orb = orbit_of(ring, m, r);
        for (const auto& x : orb.members) seen.insert(x);
        out.push_back(std::move(orb));
    }
    return out;
}

/// f(m, n) = sum over the orbit members of the coset projections at level m.
template <class R> AlgebraElement<R> bc_f(const R& ring, const UnitOrbit<R>& orbit) {
    std::vector<typename AlgebraElement<R>::Term> raw;
    for (const auto& l : orbit.members)
        raw.emplace_back(projection_monomial(ring, make_coset(ring, l, orbit.modulus)), Scalar(1));
    return AlgebraElement<R>::from_terms(ring, raw);
}

template <class R>
AlgebraElement<R> bc_f(const R& ring, const elem_t<R>& m, const elem_t<R>& orbit_member) {
    UnitOrbit<R> orb = orbit_of(ring, m, orbit_member);
    return bc_f(ring, orb);
}

/// Isometry of the presentation; indexed by the canonical associate.
template <class R> AlgebraElement<R> bc_s(const R& ring, const elem_t<R>& p) {
    if (ring.is_zero(p)) throw DegenerateInput("isometry index zero");
    return gen_iso(ring, ring.canonical_associate(p).second);
}

// ---------------------------------------------------------------------------
// Relations audit
// ---------------------------------------------------------------------------

/// Exact audit of the presentation relations over the samples. Products of
/// canonical representatives are matched up to the explicit unit: the class
/// identity s_p s_q = s_{pq} is checked as s_p s_q = s_{u^{-1}} s_{canon(pq)}
/// with u the canonicalizing unit.
template <class R>
RelationReport bc_relations_check(const R& ring, const std::vector<elem_t<R>>& ps,
                                  const std::vector<elem_t<R>>& ms) {
    RelationReport rep;
    RelationCheck c1{"s_p s_q = s_{pq}"}, c2{"f(1,0) = 1"}, c3{"s_p f(m,n) s_p* = f(mp,np)"},
        c4{"sum_{j -> k} f(mp,j) = f(p,k)"}, c5{"sum_n f(m,n) = 1"};

    for (const auto& p : ps)
        for (const auto& q : ps) {
            ++rep.cases;
            auto lhs = multiply(ring, bc_s(ring, p), bc_s(ring, q));
            auto [u, pq] = ring.canonical_associate(ring.mul(p, q));
            auto rhs = multiply(ring, gen_iso(ring, unit_inverse(ring, u)), gen_iso(ring, pq));
            if (!equal(ring, lhs, rhs) && c1.pass) {
                c1.pass = false;
                c1.counterexample = "p=" + ring.str(p) + ", q=" + ring.str(q);
            }
        }

    {
        ++rep.cases;
        auto f10 = bc_f(ring, ring.one(), ring.zero());
        if (!equal(ring, f10, AlgebraElement<R>::one(ring))) c2.pass = false;
    }

    for (const auto& p : ps)
        for (const auto& m : ms) {
            elem_t<R> mp = ring.canonical_associate(ring.mul(m, p)).second;
            for (const auto& orb : unit_orbits(ring, m)) {
                ++rep.cases;
                auto sp = bc_s(ring, p);
                auto lhs = multiply(ring, multiply(ring, sp, bc_f(ring, orb)), adjoint(ring, sp));
                auto rhs = bc_f(ring, mp, ring.mul(ring.canonical_associate(p).second, orb.rep));
                if (!equal(ring, lhs, rhs) && c3.pass) {
                    c3.pass = false;
                    c3.counterexample =
                        "p=" + ring.str(p) + ", m=" + ring.str(m) + ", n=" + ring.str(orb.rep);
                }
            }
        }

    for (const auto& p : ps)
        for (const auto& m : ms) {
            elem_t<R> mp = ring.canonical_associate(ring.mul(m, p)).second;
            auto fine = unit_orbits(ring, mp);
            for (const auto& korb : unit_orbits(ring, p)) {
                ++rep.cases;
                std::vector<typename AlgebraElement<R>::Term> raw;
                for (const auto& jorb : fine) {
                    // project the level-mp orbit to level p
                    UnitOrbit<R> down = orbit_of(ring, p, ring.canonical_residue(jorb.rep, p));
                    if (!(down.rep == korb.rep)) continue;
                    for (const auto& t : bc_f(ring, jorb).terms()) raw.push_back(t);
                }
                auto lhs = AlgebraElement<R>::from_terms(ring, raw);
                if (!equal(ring, lhs, bc_f(ring, korb)) && c4.pass) {
                    c4.pass = false;
                    c4.counterexample =
                        "p=" + ring.str(p) + ", m=" + ring.str(m) + ", k=" + ring.str(korb.rep);
                }
            }
        }

    for (const auto& m : ms) {
        ++rep.cases;
        std::vector<typename AlgebraElement<R>::Term> raw;
        for (const auto& orb : unit_orbits(ring, m))
            for (const auto& t : bc_f(ring, orb).terms()) raw.push_back(t);
        auto total = AlgebraElement<R>::from_terms(ring, raw);
        if (!equal(ring, total, AlgebraElement<R>::one(ring)) && c5.pass) {
            c5.pass = false;
            c5.counterexample = "m=" + ring.str(m);
        }
    }

    rep.checks = {c1, c2, c3, c4, c5};
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

// ---------------------------------------------------------------------------
// Galois parameters (finite compatible families of invertible residues)
// ---------------------------------------------------------------------------

template <class R> struct GaloisParameter {
    std::vector<elem_t<R>> levels;          // canonical, divisor-closed, contains 1
    std::map<elem_t<R>, elem_t<R>> residue; // m -> invertible residue w_m
};

template <class R>
GaloisParameter<R> galois_parameter(const R& ring, const std::vector<elem_t<R>>& raw_levels,
                                    const std::map<elem_t<R>, elem_t<R>>& seeds) {
    auto levels = normalize_levels(ring, raw_levels);
    require_divisor_closed(ring, levels);
    GaloisParameter<R> out;
    out.levels = levels;
    for (const auto& m : levels) {
        elem_t<R> w;
        if (ring.is_unit(m)) {
            w = ring.zero();
        } else {
            auto it = seeds.find(m);
            if (it == seeds.end()) throw DomainError("missing seed residue at level " + ring.str(m));
            w = ring.canonical_residue(it->second, m);
            if (!ring.is_unit(gcd_elem(ring, w, m)))
                throw DomainError("seed residue not invertible mod " + ring.str(m));
        }
        out.residue[m] = w;
    }
    // compatibility at orbit level under the canonical projections
    for (const auto& m : levels) {
        if (ring.is_unit(m)) continue;
        for (const auto& l : levels) {
            if (ring.is_unit(l) || ring.norm(l) <= ring.norm(m) || !divides(ring, m, l)) continue;
            auto down = orbit_of(ring, m, ring.canonical_residue(out.residue.at(l), m));
            auto stored = orbit_of(ring, m, out.residue.at(m));
            if (!(down.rep == stored.rep))
                throw IncompatibleFamily("seed at level " + ring.str(l) +
                                         " projects outside the orbit at level " + ring.str(m));
        }
    }
    return out;
}

template <class R>
GaloisParameter<R> trivial_galois(const R& ring, const std::vector<elem_t<R>>& raw_levels) {
    auto levels = normalize_levels(ring, raw_levels);
    std::map<elem_t<R>, elem_t<R>> seeds;
    for (const auto& m : levels)
        if (!ring.is_unit(m)) seeds[m] = ring.one();
    return galois_parameter(ring, levels, seeds);
}

// ---------------------------------------------------------------------------
// Words in the presentation and the basis representation
// ---------------------------------------------------------------------------

template <class R> struct BcGen {
    enum class Tag { iso, iso_adj, proj } tag;
    elem_t<R> index;     // p for iso / iso_adj, m for proj
    elem_t<R> orbit_rep; // for proj
};

template <class R> struct BcWord {
    std::vector<BcGen<R>> gens; // operator product, leftmost acts last
};

template <class R> struct BcElement {
    std::vector<std::pair<Scalar, BcWord<R>>> terms;
};

template <class R> BcElement<R> bc_word_element(const BcWord<R>& w) { return {{{Scalar(1), w}}}; }

template <class R> BcElement<R> bc_concat(const BcElement<R>& x, const BcElement<R>& y) {
    BcElement<R> out;
    for (const auto& [sx, wx] : x.terms)
        for (const auto& [sy, wy] : y.terms) {
            BcWord<R> w = wx;
            w.gens.insert(w.gens.end(), wy.gens.begin(), wy.gens.end());
            out.terms.emplace_back(sx * sy, w);
        }
    return out;
}

/// Symbolic image inside the ambient algebra (for cross-checks).
template <class R> AlgebraElement<R> bc_embed(const R& ring, const BcElement<R>& x) {
    AlgebraElement<R> out;
    for (const auto& [s, w] : x.terms) {
        AlgebraElement<R> acc = AlgebraElement<R>::one(ring);
        for (const auto& g : w.gens) {
            switch (g.tag) {
            case BcGen<R>::Tag::iso: acc = multiply(ring, acc, bc_s(ring, g.index)); break;
            case BcGen<R>::Tag::iso_adj:
                acc = multiply(ring, acc, adjoint(ring, bc_s(ring, g.index)));
                break;
            case BcGen<R>::Tag::proj:
                acc = multiply(ring, acc, bc_f(ring, g.index, g.orbit_rep));
                break;
            }
        }
        out = add(ring, out, acc.scaled(s));
    }
    return out;
}

/// One word applied to the basis vector indexed by the canonical orbit
/// representative r; empty when annihilated. The projection f(m, n) tests
/// whether the twisted residue w_m r falls in the orbit n.
template <class R>
std::optional<elem_t<R>> pi_alpha_apply_word(const R& ring, const BcWord<R>& w,
                                             const GaloisParameter<R>& alpha, elem_t<R> r) {
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
        const BcGen<R>& g = *it;
        switch (g.tag) {
        case BcGen<R>::Tag::iso:
            r = ring.canonical_associate(ring.mul(g.index, r)).second;
            break;
        case BcGen<R>::Tag::iso_adj: {
            if (!divides(ring, g.index, r)) return std::nullopt;
            r = ring.canonical_associate(exact_div(ring, r, g.index)).second;
            break;
        }
        case BcGen<R>::Tag::proj: {
            elem_t<R> mc = ring.canonical_associate(g.index).second;
            auto itw = alpha.residue.find(mc);
            if (itw == alpha.residue.end())
                throw RefinementMismatch("modulus " + ring.str(mc) +
                                         " outside the parameter's levels");
            elem_t<R> twisted = ring.canonical_residue(ring.mul(itw->second, r), mc);
            auto orb = orbit_of(ring, mc, twisted);
            auto want = orbit_of(ring, mc, g.orbit_rep);
            if (!(orb.rep == want.rep)) return std::nullopt;
            break;
        }
        }
    }
    return r;
}

/// Exact image of the basis vector under a combination of words.
template <class R>
std::vector<std::pair<Scalar, elem_t<R>>> pi_alpha_apply(const R& ring, const BcElement<R>& x,
                                                         const GaloisParameter<R>& alpha,
                                                         const elem_t<R>& r) {
    std::map<elem_t<R>, Scalar> acc;
    for (const auto& [s, w] : x.terms) {
        if (auto image = pi_alpha_apply_word(ring, w, alpha, r)) {
            auto [it, inserted] = acc.emplace(*image, s);
            if (!inserted) it->second += s;
        }
    }
    std::vector<std::pair<Scalar, elem_t<R>>> out;
    for (auto& [pt, s] : acc)
        if (!s.is_zero()) out.emplace_back(s, pt);
    return out;
}

} // namespace ringstar
