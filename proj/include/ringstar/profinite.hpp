#pragma once

// Finite truncations of the profinite completion: compatible residue
// families over a divisor-closed set of levels, with the level-l quotient
// model checked against the residue ring R/(l).

#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "ringstar/factor.hpp"
#include "ringstar/rings.hpp"

namespace ringstar {

template <class R> struct Tower {
    std::vector<elem_t<R>> levels;          // canonical, sorted by (norm, order), contains 1
    std::map<elem_t<R>, elem_t<R>> residue; // level -> canonical residue
};

template <class R>
std::vector<elem_t<R>> normalize_levels(const R& ring, std::vector<elem_t<R>> seeds) {
    if (seeds.empty()) throw DegenerateInput("empty level set");
    std::vector<elem_t<R>> out;
    out.push_back(ring.one());
    for (auto& s : seeds) {
        if (ring.is_zero(s)) throw DegenerateModulus();
        out.push_back(ring.canonical_associate(s).second);
    }
    std::sort(out.begin(), out.end(), [&](const elem_t<R>& a, const elem_t<R>& b) {
        Int na = ring.norm(a), nb = ring.norm(b);
        if (na != nb) return na < nb;
        return ring.cmp(a, b) < 0;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Divisor closure of the seeds (all canonical divisors of every seed).
template <class R>
std::vector<elem_t<R>> divisor_closed_levels(const R& ring, const std::vector<elem_t<R>>& seeds) {
    std::vector<elem_t<R>> all;
    for (const auto& s : seeds) {
        if (ring.is_zero(s)) throw DegenerateModulus();
        if (ring.is_unit(s)) { all.push_back(ring.one()); continue; }
        for (const auto& d : divisors(ring, s)) all.push_back(d);
    }
    return normalize_levels(ring, all);
}

/// Checked precondition: dividing any level by one of its primes lands on
/// another level.
template <class R> void require_divisor_closed(const R& ring, const std::vector<elem_t<R>>& levels) {
    std::set<elem_t<R>> have(levels.begin(), levels.end());
    for (const auto& l : levels) {
        if (ring.is_unit(l)) continue;
        for (const auto& [p, e] : factor(ring, l).primes) {
            (void)e;
            elem_t<R> down = ring.canonical_associate(exact_div(ring, l, p)).second;
            if (!have.count(down))
                throw RefinementMismatch("level set is not divisor-closed: missing " + ring.str(down));
        }
    }
}

template <class R>
Tower<R> tower_embed(const R& ring, const elem_t<R>& r, const std::vector<elem_t<R>>& raw_levels) {
    auto levels = normalize_levels(ring, raw_levels);
    require_divisor_closed(ring, levels);
    Tower<R> t;
    t.levels = levels;
    for (const auto& l : levels) t.residue[l] = ring.canonical_residue(r, l);
    return t;
}

template <class R> bool tower_compatible(const R& ring, const Tower<R>& t) {
    for (const auto& m : t.levels)
        for (const auto& l : t.levels) {
            if (ring.norm(l) <= ring.norm(m) || !divides(ring, m, l)) continue;
            if (!(t.residue.at(m) == ring.canonical_residue(t.residue.at(l), m))) return false;
        }
    return true;
}

template <class R> elem_t<R> tower_project(const R& ring, const Tower<R>& t, const elem_t<R>& m) {
    auto mc = ring.canonical_associate(m).second;
    auto it = t.residue.find(mc);
    if (it == t.residue.end()) throw RefinementMismatch("level " + ring.str(mc) + " not in the tower");
    return it->second;
}

template <class R> Tower<R> tower_scale(const R& ring, const Tower<R>& t, const elem_t<R>& w) {
    Tower<R> out;
    out.levels = t.levels;
    for (const auto& l : t.levels) out.residue[l] = ring.canonical_residue(ring.mul(w, t.residue.at(l)), l);
    return out;
}

enum class TowerOp { add, mul };

template <class R>
Tower<R> tower_combine(const R& ring, const Tower<R>& x, const Tower<R>& y, TowerOp op) {
    Tower<R> out;
    for (const auto& l : x.levels) {
        auto it = y.residue.find(l);
        if (it == y.residue.end()) continue;
        out.levels.push_back(l);
        elem_t<R> v = op == TowerOp::add ? ring.add(x.residue.at(l), it->second)
                                         : ring.mul(x.residue.at(l), it->second);
        out.residue[l] = ring.canonical_residue(v, l);
    }
    if (out.levels.empty()) throw RefinementMismatch("towers share no levels");
    return out;
}

// ---------------------------------------------------------------------------
// Quotient model check: the level-l projection against R/(l)
// ---------------------------------------------------------------------------

struct QuotientIsoReport {
    bool pass = false;
    bool surjective = false, additive = false, multiplicative = false;
    bool kernel_matches = false, fibers_uniform = false;
    Int model_size{0}, kernel_size{0};
    std::string detail;
};

/// Models the tower truncation by its top level T (every level divides T),
/// then verifies that projecting to level l is a surjective ring map whose
/// kernel is exactly the shadow of l * (top-level residues), and that the
/// fibers over R/(l) are uniform.
template <class R>
QuotientIsoReport quotient_iso_check(const R& ring, const elem_t<R>& l,
                                     const std::vector<elem_t<R>>& raw_levels) {
    QuotientIsoReport rep;
    if (ring.is_zero(l)) throw DegenerateModulus();
    auto levels = normalize_levels(ring, raw_levels);
    require_divisor_closed(ring, levels);
    elem_t<R> lc = ring.canonical_associate(l).second;

    elem_t<R> top = ring.one();
    for (const auto& lev : levels) top = lcm_elem(ring, top, lev);
    bool top_present = false, l_present = false;
    for (const auto& lev : levels) {
        if (lev == top) top_present = true;
        if (lev == lc) l_present = true;
    }
    if (!l_present) throw RefinementMismatch("level " + ring.str(lc) + " not present");
    if (!top_present || top == lc)
        throw RefinementMismatch("no level strictly above " + ring.str(lc) + " present");

    const auto model = ring.residues(top);
    rep.model_size = Int(model.size());

    std::set<elem_t<R>> image;
    std::map<elem_t<R>, Int> fiber;
    for (const auto& x : model) {
        elem_t<R> px = ring.canonical_residue(x, lc);
        image.insert(px);
        fiber[px] += 1;
    }
    rep.surjective = Int(image.size()) == ring.norm(lc);

    // ring homomorphism on a deterministic sample of pairs
    rep.additive = rep.multiplicative = true;
    const std::size_t n = model.size();
    const std::size_t step = n <= 64 ? 1 : n / 37 + 1;
    for (std::size_t i = 0; i < n; i += 1) {
        for (std::size_t j = i % step; j < n; j += step) {
            const auto &x = model[i], &y = model[j];
            elem_t<R> sum_then = ring.canonical_residue(ring.canonical_residue(ring.add(x, y), top), lc);
            elem_t<R> then_sum = ring.canonical_residue(
                ring.add(ring.canonical_residue(x, lc), ring.canonical_residue(y, lc)), lc);
            if (!(sum_then == then_sum)) rep.additive = false;
            elem_t<R> prod_then = ring.canonical_residue(ring.canonical_residue(ring.mul(x, y), top), lc);
            elem_t<R> then_prod = ring.canonical_residue(
                ring.mul(ring.canonical_residue(x, lc), ring.canonical_residue(y, lc)), lc);
            if (!(prod_then == then_prod)) rep.multiplicative = false;
        }
        if (!rep.additive || !rep.multiplicative) break;
    }

    // kernel of the projection = l * (residues mod top/l), elementwise
    std::set<elem_t<R>> kernel;
    for (const auto& x : model)
        if (divides(ring, lc, x)) kernel.insert(x);
    rep.kernel_size = Int(kernel.size());
    std::set<elem_t<R>> shadow;
    for (const auto& y : ring.residues(exact_div(ring, top, lc)))
        shadow.insert(ring.canonical_residue(ring.mul(lc, y), top));
    rep.kernel_matches = kernel == shadow;

    rep.fibers_uniform = true;
    Int expect = ring.norm(top) / ring.norm(lc);
    for (const auto& [px, count] : fiber)
        if (count != expect) rep.fibers_uniform = false;

    rep.pass = rep.surjective && rep.additive && rep.multiplicative && rep.kernel_matches &&
               rep.fibers_uniform;
    std::ostringstream os;
    os << "level " << ring.str(lc) << " against top " << ring.str(top) << ": classes " << image.size()
       << ", kernel " << rep.kernel_size;
    rep.detail = os.str();
    return rep;
}

} // namespace ringstar
