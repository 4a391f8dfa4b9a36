#pragma once

// Exact *-algebra arithmetic on the dense span of canonical monomials.
// Elements keep a canonical term list: terms are grouped by the affine part
// of their map, each group's domain weights are held as a coset-indicator
// combination in (conductor-coarsened) atom form, and the groups are flat-
// tened back to sorted monomials. Equality of canonical forms then agrees
// with operator equality in the regular representation.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringstar/indicator.hpp"
#include "ringstar/monomial.hpp"

namespace ringstar {

template <class R> struct AffineKey {
    Fraction<R> a, b;
    friend bool operator<(const AffineKey& x, const AffineKey& y) {
        if (!(x.a.den == y.a.den)) return x.a.den < y.a.den;
        if (!(x.a.num == y.a.num)) return x.a.num < y.a.num;
        if (!(x.b.den == y.b.den)) return x.b.den < y.b.den;
        return x.b.num < y.b.num;
    }
    friend bool operator==(const AffineKey&, const AffineKey&) = default;
};

template <class R> class AlgebraElement {
  public:
    using Term = std::pair<Monomial<R>, Scalar>;
    using ClassMap = std::map<AffineKey<R>, Indicator<R>>;

    AlgebraElement() = default;

    static AlgebraElement zero() { return {}; }

    static AlgebraElement one(const R& ring) {
        return from_monomial(ring, projection_monomial(ring, whole_ring(ring)), Scalar(1));
    }

    static AlgebraElement scalar_multiple_of_one(const R& ring, const Scalar& s) {
        return from_monomial(ring, projection_monomial(ring, whole_ring(ring)), s);
    }

    static AlgebraElement from_monomial(const R& ring, const Monomial<R>& t, const Scalar& s) {
        AlgebraElement x;
        if (!s.is_zero()) {
            ClassMap acc;
            accumulate(ring, acc, t, s);
            x = assemble(ring, acc);
        }
        return x;
    }

    static AlgebraElement from_terms(const R& ring, const std::vector<Term>& raw) {
        ClassMap acc;
        for (const auto& [t, s] : raw) accumulate(ring, acc, t, s);
        return assemble(ring, acc);
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    friend AlgebraElement add(const R& ring, const AlgebraElement& x, const AlgebraElement& y) {
        ClassMap acc;
        for (const auto& [t, s] : x.terms_) accumulate(ring, acc, t, s);
        for (const auto& [t, s] : y.terms_) accumulate(ring, acc, t, s);
        return assemble(ring, acc);
    }

    friend AlgebraElement sub(const R& ring, const AlgebraElement& x, const AlgebraElement& y) {
        ClassMap acc;
        for (const auto& [t, s] : x.terms_) accumulate(ring, acc, t, s);
        for (const auto& [t, s] : y.terms_) accumulate(ring, acc, t, -s);
        return assemble(ring, acc);
    }

    AlgebraElement scaled(const Scalar& s) const {
        AlgebraElement out;
        if (s.is_zero()) return out;
        out.terms_ = terms_;
        for (auto& [t, v] : out.terms_) v = v * s;
        return out;
    }

    /// Normative product: compose the partial affine maps of the factors.
    friend AlgebraElement multiply(const R& ring, const AlgebraElement& x, const AlgebraElement& y) {
        ClassMap acc;
        std::vector<PartialAffineMap<R>> xmaps, ymaps;
        xmaps.reserve(x.terms_.size());
        ymaps.reserve(y.terms_.size());
        for (const auto& [t, s] : x.terms_) { (void)s; xmaps.push_back(to_affine(ring, t)); }
        for (const auto& [t, s] : y.terms_) { (void)s; ymaps.push_back(to_affine(ring, t)); }
        for (std::size_t i = 0; i < x.terms_.size(); ++i) {
            for (std::size_t j = 0; j < y.terms_.size(); ++j) {
                const auto& fx = xmaps[i];
                const auto& fy = ymaps[j];
                auto pre = coset_affine_preimage(ring, fx.domain, fy.a, fy.b);
                if (!pre) continue;
                auto dom = coset_intersect(ring, fy.domain, *pre);
                if (!dom) continue;
                AffineKey<R> key{frac_mul(ring, fx.a, fy.a),
                                 frac_add(ring, frac_mul(ring, fx.a, fy.b), fx.b)};
                acc[key].add_term(*dom, x.terms_[i].second * y.terms_[j].second);
            }
        }
        return assemble(ring, acc);
    }

    /// Secondary product route: the generator-relation rewrite of words.
    /// Must agree with the affine-map composition; tested, never mixed.
    friend AlgebraElement multiply_rewrite(const R& ring, const AlgebraElement& x,
                                           const AlgebraElement& y) {
        ClassMap acc;
        for (const auto& [t1, s1] : x.terms_) {
            for (const auto& [t2, s2] : y.terms_) {
                // (s_m1* p_c1 u^k1 s_m1') (s_m2* p_c2 u^k2 s_m2')
                //   = s_{m2 m1}* u^{m2 k1} F u^{m1' k2} s_{m2' m1'}
                // with F = m2(c1 - k1) * (m2 m1') * m1' c2
                Coset<R> f1 = coset_scale(ring, coset_translate(ring, t1.c, ring.neg(t1.k)), t2.m);
                Coset<R> f2 = make_coset(ring, ring.zero(), ring.mul(t2.m, t1.mp));
                Coset<R> f3 = coset_scale(ring, t2.c, t1.mp);
                auto f12 = coset_intersect(ring, f1, f2);
                if (!f12) continue;
                auto f = coset_intersect(ring, *f12, f3);
                if (!f) continue;
                elem_t<R> n_left = ring.mul(t2.m, t1.k);
                elem_t<R> k_raw = ring.add(n_left, ring.mul(t1.mp, t2.k));
                auto mono = term_normalize(ring, ring.mul(t2.m, t1.m), coset_translate(ring, *f, n_left),
                                           k_raw, ring.mul(t2.mp, t1.mp));
                if (!mono) continue;
                accumulate(ring, acc, *mono, s1 * s2);
            }
        }
        return assemble(ring, acc);
    }

    friend AlgebraElement adjoint(const R& ring, const AlgebraElement& x) {
        ClassMap acc;
        for (const auto& [t, s] : x.terms_) accumulate(ring, acc, monomial_adjoint(ring, t), s.conj());
        return assemble(ring, acc);
    }

    /// Exact equality as operators (representation independent).
    friend bool equal(const R& ring, const AlgebraElement& x, const AlgebraElement& y) {
        return sub(ring, x, y).is_zero();
    }

    bool is_diagonal(const R& ring) const {
        for (const auto& [t, s] : terms_) {
            (void)s;
            if (!is_diagonal_monomial(ring, t)) return false;
        }
        return true;
    }

    /// The coset-indicator combination of the diagonal terms.
    Indicator<R> diagonal_part(const R& ring) const {
        Indicator<R> out;
        for (const auto& [t, s] : terms_)
            if (is_diagonal_monomial(ring, t)) out.add_term(t.c, s);
        return out;
    }

    friend bool operator==(const AlgebraElement& x, const AlgebraElement& y) {
        return x.terms_ == y.terms_;
    }

  private:
    static bool is_diagonal_monomial(const R& ring, const Monomial<R>& t) {
        return t.m == ring.one() && t.mp == ring.one() && ring.is_zero(t.k);
    }

    static void accumulate(const R& ring, ClassMap& acc, const Monomial<R>& t, const Scalar& s) {
        if (s.is_zero()) return;
        PartialAffineMap<R> map = to_affine(ring, t);
        acc[AffineKey<R>{map.a, map.b}].add_term(map.domain, s);
    }

    static AlgebraElement assemble(const R& ring, const ClassMap& acc) {
        AlgebraElement out;
        for (const auto& [key, ind] : acc) {
            Indicator<R> canon = ind.conductor_form(ring);
            for (const auto& [dom, s] : canon.terms())
                out.terms_.emplace_back(from_affine(ring, PartialAffineMap<R>{key.a, key.b, dom}), s);
        }
        std::sort(out.terms_.begin(), out.terms_.end(),
                  [](const Term& u, const Term& v) { return u.first < v.first; });
        return out;
    }

    std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

template <class R> AlgebraElement<R> gen_iso(const R& ring, const elem_t<R>& m) {
    if (ring.is_zero(m)) throw DegenerateInput("isometry index zero");
    auto t = term_normalize(ring, ring.one(), make_coset(ring, ring.zero(), m), ring.zero(), m);
    return AlgebraElement<R>::from_monomial(ring, *t, Scalar(1));
}

template <class R> AlgebraElement<R> gen_iso_adjoint(const R& ring, const elem_t<R>& m) {
    if (ring.is_zero(m)) throw DegenerateInput("isometry index zero");
    auto t = term_normalize(ring, m, make_coset(ring, ring.zero(), m), ring.zero(), ring.one());
    return AlgebraElement<R>::from_monomial(ring, *t, Scalar(1));
}

template <class R> AlgebraElement<R> gen_unitary(const R& ring, const elem_t<R>& n) {
    auto t = term_normalize(ring, ring.one(), whole_ring(ring), n, ring.one());
    return AlgebraElement<R>::from_monomial(ring, *t, Scalar(1));
}

template <class R> AlgebraElement<R> gen_range_projection(const R& ring, const elem_t<R>& m) {
    if (ring.is_zero(m)) throw DegenerateInput("projection index zero");
    auto t = term_normalize(ring, ring.one(), make_coset(ring, ring.zero(), m), ring.zero(), ring.one());
    return AlgebraElement<R>::from_monomial(ring, *t, Scalar(1));
}

template <class R> AlgebraElement<R> gen_coset_projection(const R& ring, const Coset<R>& c) {
    return AlgebraElement<R>::from_monomial(ring, projection_monomial(ring, c), Scalar(1));
}

/// The ax+b generator u^b s_a, a nonzero, b in R.
template <class R> AlgebraElement<R> gen_axb(const R& ring, const elem_t<R>& a, const elem_t<R>& b) {
    if (ring.is_zero(a)) throw DegenerateInput("ax+b with a = 0");
    auto t = term_normalize(ring, ring.one(), make_coset(ring, b, a), b, a);
    return AlgebraElement<R>::from_monomial(ring, *t, Scalar(1));
}

template <class R> std::string element_str(const R& ring, const AlgebraElement<R>& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [t, s] : x.terms()) {
        if (!first) out += " + ";
        first = false;
        if (!s.is_one()) out += scalar_str(s) + "*";
        out += monomial_str(ring, t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Defining-relations audit
// ---------------------------------------------------------------------------

struct RelationCheck {
    std::string relation;
    bool pass = true;
    std::string counterexample;
};

struct RelationReport {
    bool pass = true;
    long cases = 0;
    std::vector<RelationCheck> checks;
};

/// Exact symbolic audit of the four generator relations over the sample.
template <class R>
RelationReport verify_defining_relations(const R& ring, const std::vector<elem_t<R>>& ms,
                                         const std::vector<elem_t<R>>& ns) {
    RelationReport rep;
    RelationCheck c1{"s_k s_m = s_{km}"}, c2{"u^l u^n = u^{l+n}"}, c3{"s_m u^n = u^{mn} s_m"},
        c4{"sum_n u^n e_m u^{-n} = 1"};

    for (const auto& k : ms)
        for (const auto& m : ms) {
            ++rep.cases;
            auto lhs = multiply(ring, gen_iso(ring, k), gen_iso(ring, m));
            auto rhs = gen_iso(ring, ring.mul(k, m));
            if (!equal(ring, lhs, rhs) && c1.pass) {
                c1.pass = false;
                c1.counterexample = "k=" + ring.str(k) + ", m=" + ring.str(m);
            }
        }

    for (const auto& l : ns)
        for (const auto& n : ns) {
            ++rep.cases;
            auto lhs = multiply(ring, gen_unitary(ring, l), gen_unitary(ring, n));
            auto rhs = gen_unitary(ring, ring.add(l, n));
            if (!equal(ring, lhs, rhs) && c2.pass) {
                c2.pass = false;
                c2.counterexample = "l=" + ring.str(l) + ", n=" + ring.str(n);
            }
        }

    for (const auto& m : ms)
        for (const auto& n : ns) {
            ++rep.cases;
            auto lhs = multiply(ring, gen_iso(ring, m), gen_unitary(ring, n));
            auto rhs = multiply(ring, gen_unitary(ring, ring.mul(m, n)), gen_iso(ring, m));
            if (!equal(ring, lhs, rhs) && c3.pass) {
                c3.pass = false;
                c3.counterexample = "m=" + ring.str(m) + ", n=" + ring.str(n);
            }
        }

    for (const auto& m : ms) {
        ++rep.cases;
        AlgebraElement<R> acc;
        for (const auto& n : ring.residues(m)) {
            auto un = gen_unitary(ring, n);
            auto piece = multiply(ring, multiply(ring, un, gen_range_projection(ring, m)),
                                  adjoint(ring, un));
            acc = add(ring, acc, piece);
        }
        if (!equal(ring, acc, AlgebraElement<R>::one(ring)) && c4.pass) {
            c4.pass = false;
            c4.counterexample = "m=" + ring.str(m);
        }
    }

    rep.checks = {c1, c2, c3, c4};
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

} // namespace ringstar
