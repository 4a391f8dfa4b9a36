#pragma once

// Truncated partition functions and equilibrium-state values for the
// presentation dynamics scaling each isometry by the norm of its index.
// The numeric layer is binary floating point with explicitly propagated
// tail bounds; every claim is "within the reported bound".

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "ringstar/bost_connes.hpp"

namespace ringstar {

struct KmsConfig {
    double beta = 2.0;
    std::int64_t trunc = 1000; // norm cutoff B
};

/// Canonical associates (one per nonzero associate class, equivalently one
/// per nonzero ideal) of norm at most B, in enumeration order.
template <class R> std::vector<elem_t<R>> canonical_reps_up_to_norm(const R& ring, const Int& bound) {
    std::vector<elem_t<R>> out;
    for (const auto& x : elements_up_to_norm(ring, bound)) {
        if (ring.is_zero(x)) continue;
        if (ring.canonical_associate(x).second == x) out.push_back(x);
    }
    return out;
}

// Slope c with #{reps of norm <= x} <= c x, per ring:
//   Z:    reps are 1..floor(x), count <= x.
//   Z[i]: reps have a >= 1, b >= 0, a^2 + b^2 <= x, so a, b <= sqrt(x) and
//         the count is at most sqrt(x) * (sqrt(x) + 1) <= 2x for x >= 1.
//   Z[w]: (2a - b)^2 + 3b^2 <= 4x bounds |a| and |b| by 2 sqrt(x/3), so the
//         count is at most (2 sqrt(x/3))(4 sqrt(x/3) + 1) <= 3x + 2 sqrt(x),
//         and 4 is a safe slope for x >= 1.
template <class R> double ideal_count_slope() {
    if constexpr (R::kind == RingKind::integers) return 1.0;
    else if constexpr (R::kind == RingKind::gaussian) return 2.0;
    else if constexpr (R::kind == RingKind::eisenstein) return 4.0;
    else return 0.0; // unreachable: function fields are rejected upstream
}

/// Upper bound on sum_{N(r) > B} N(r)^{-beta} over representatives, via
/// partial summation against the linear count bound:
///   tail <= c * beta/(beta-1) * B^{1-beta}.
template <class R> double zeta_tail_bound(double beta, double bound) {
    return ideal_count_slope<R>() * beta / (beta - 1.0) * std::pow(bound, 1.0 - beta);
}

struct ValueWithBound {
    double value = 0.0;
    double tail_bound = 0.0;
};

/// Truncated partition function: sum of N(r)^{-beta} over canonical
/// representatives with N(r) <= B, plus a rigorous tail bound.
template <class R> ValueWithBound zeta_partial(const R& ring, double beta, std::int64_t bound) {
    if constexpr (!R::is_number_ring)
        throw UnsupportedRing("partition function is defined for number rings only");
    if (beta <= 1.0) throw DivergentSeries("partition function diverges for beta <= 1");
    if (bound < 2) throw DomainError("truncation bound must be at least 2");
    ValueWithBound out;
    for (const auto& r : canonical_reps_up_to_norm(ring, Int(bound)))
        out.value += std::pow(static_cast<double>(ring.norm(r)), -beta);
    out.tail_bound = zeta_tail_bound<R>(beta, static_cast<double>(bound));
    return out;
}

struct KmsValue {
    std::complex<double> value{0.0, 0.0};
    double error_bound = 0.0;
};

/// Truncated state value: the weighted diagonal trace of the represented
/// element divided by the truncated partition function. The bound combines
/// the trace tail (entries are bounded by the total coefficient mass) with
/// the partition tail.
template <class R>
KmsValue kms_value(const R& ring, const BcElement<R>& x, const KmsConfig& cfg,
                   const GaloisParameter<R>& alpha) {
    if (cfg.beta <= 1.0) throw DivergentSeries("state is defined for beta > 1");
    if (cfg.trunc < 2) throw DomainError("truncation bound must be at least 2");

    double zhat = 0.0;
    std::complex<double> trace{0.0, 0.0};
    for (const auto& r : canonical_reps_up_to_norm(ring, Int(cfg.trunc))) {
        const double w = std::pow(static_cast<double>(ring.norm(r)), -cfg.beta);
        zhat += w;
        for (const auto& [s, word] : x.terms) {
            auto image = pi_alpha_apply_word(ring, word, alpha, r);
            if (image && *image == r)
                trace += std::complex<double>(s.to_double_re(), s.to_double_im()) * w;
        }
    }

    double mass = 0.0;
    for (const auto& [s, word] : x.terms) {
        (void)word;
        mass += std::sqrt(static_cast<double>(s.abs_sq()));
    }
    const double tail = zeta_tail_bound<R>(cfg.beta, static_cast<double>(cfg.trunc));

    KmsValue out;
    out.value = trace / zhat;
    out.error_bound = (mass * tail + std::abs(trace) / zhat * tail) / zhat;
    return out;
}

/// Scale factor of the analytically continued dynamics at t = i beta:
/// N(p)^{-beta} per isometry, N(p)^{beta} per adjoint isometry.
template <class R> double sigma_i_beta_scale(const R& ring, const BcWord<R>& w, double beta) {
    double out = 1.0;
    for (const auto& g : w.gens) {
        if (g.tag == BcGen<R>::Tag::iso)
            out *= std::pow(static_cast<double>(ring.norm(g.index)), -beta);
        else if (g.tag == BcGen<R>::Tag::iso_adj)
            out *= std::pow(static_cast<double>(ring.norm(g.index)), beta);
    }
    return out;
}

template <class R> BcElement<R> sigma_i_beta(const R& ring, const BcElement<R>& x, double beta) {
    BcElement<R> out = x;
    for (auto& [s, w] : out.terms) {
        const double f = sigma_i_beta_scale(ring, w, beta);
        // the scale is a power of an integer norm; representable exactly
        // enough for the numeric layer, but kept as a rational when it is one
        s = s * Scalar(Rat(f));
    }
    return out;
}

struct KmsResidual {
    double residual = 0.0;
    double error_bound = 0.0;
};

/// | phi(a sigma_{i beta}(b)) - phi(b a) |, which must stay within the sum
/// of the two truncation bounds (the untruncated values agree exactly).
template <class R>
KmsResidual kms_residual(const R& ring, const BcElement<R>& a, const BcElement<R>& b,
                         const KmsConfig& cfg, const GaloisParameter<R>& alpha) {
    BcElement<R> ab = bc_concat(a, sigma_i_beta(ring, b, cfg.beta));
    BcElement<R> ba = bc_concat(b, a);
    KmsValue lhs = kms_value(ring, ab, cfg, alpha);
    KmsValue rhs = kms_value(ring, ba, cfg, alpha);
    KmsResidual out;
    out.residual = std::abs(lhs.value - rhs.value);
    out.error_bound = lhs.error_bound + rhs.error_bound;
    return out;
}

} // namespace ringstar
