#pragma once

// The concrete Euclidean domains every other module is instantiated over:
// rational integers, Gaussian integers, Eisenstein integers and univariate
// polynomial rings over finite fields. Each ring class provides exact
// arithmetic, Euclidean division, canonical associates, deterministic
// residue transversals and a deterministic enumeration of all elements.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ringstar/errors.hpp"
#include "ringstar/scalar.hpp"

namespace ringstar {

enum class RingKind { integers, gaussian, eisenstein, poly_fq };

// ---------------------------------------------------------------------------
// Integer helpers
// ---------------------------------------------------------------------------

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (q * b != a && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

// Nearest integer to a/b, ties rounding up. Deterministic.
inline Int round_div(const Int& a, const Int& b) {
    Int bb = b, aa = a;
    if (bb < 0) { bb = -bb; aa = -aa; }
    return floor_div(2 * aa + bb, 2 * bb);
}

// ---------------------------------------------------------------------------
// Rational integers
// ---------------------------------------------------------------------------

struct ZRing {
    using Elem = Int;
    static constexpr RingKind kind = RingKind::integers;
    static constexpr bool is_number_ring = true;

    std::string name() const { return "Z"; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long n) const { return Elem(n); }

    bool is_zero(const Elem& x) const { return x == 0; }
    bool is_unit(const Elem& x) const { return x == 1 || x == -1; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }

    void divmod(const Elem& a, const Elem& b, Elem& q, Elem& r) const {
        if (b == 0) throw DegenerateInput("division by zero");
        q = floor_div(a, b);
        r = a - q * b;
    }

    Int norm(const Elem& x) const { return x < 0 ? Int(-x) : x; }

    const std::vector<Elem>& units() const {
        static const std::vector<Elem> u{Elem(1), Elem(-1)};
        return u;
    }

    std::pair<Elem, Elem> canonical_associate(const Elem& x) const {
        if (x == 0) throw DegenerateInput("canonical associate of zero");
        return x < 0 ? std::make_pair(Elem(-1), Elem(-x)) : std::make_pair(Elem(1), x);
    }

    Elem canonical_residue(const Elem& r, const Elem& m) const {
        if (m == 0) throw DegenerateModulus();
        return floor_mod(r, norm(m));
    }

    std::vector<Elem> residues(const Elem& m) const {
        if (m == 0) throw DegenerateModulus();
        std::vector<Elem> out;
        for (Int i = 0; i < norm(m); ++i) out.push_back(i);
        return out;
    }

    // 0, 1, -1, 2, -2, ...  (positives lead inside each norm shell)
    Elem element_at(std::uint64_t n) const {
        if (n == 0) return 0;
        Int h((n + 1) / 2);
        return (n % 2 == 1) ? h : -h;
    }

    int cmp(const Elem& a, const Elem& b) const { return a < b ? -1 : (a == b ? 0 : 1); }

    Elem smallest_prime() const { return 2; }

    std::string str(const Elem& x) const { return x.str(); }
};

// ---------------------------------------------------------------------------
// Quadratic integer rings (Gaussian and Eisenstein)
// ---------------------------------------------------------------------------

struct GaussInt {
    Int a{0}, b{0}; // a + b*i
    GaussInt() = default;
    GaussInt(Int x, Int y) : a(std::move(x)), b(std::move(y)) {}
    friend bool operator==(const GaussInt&, const GaussInt&) = default;
    friend bool operator<(const GaussInt& x, const GaussInt& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
    friend GaussInt operator+(const GaussInt& x, const GaussInt& y) { return {x.a + y.a, x.b + y.b}; }
    friend GaussInt operator-(const GaussInt& x, const GaussInt& y) { return {x.a - y.a, x.b - y.b}; }
    friend GaussInt operator-(const GaussInt& x) { return {-x.a, -x.b}; }
    friend GaussInt operator*(const GaussInt& x, const GaussInt& y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
    }
};

struct EisenInt {
    Int a{0}, b{0}; // a + b*w with w^2 = -1 - w
    EisenInt() = default;
    EisenInt(Int x, Int y) : a(std::move(x)), b(std::move(y)) {}
    friend bool operator==(const EisenInt&, const EisenInt&) = default;
    friend bool operator<(const EisenInt& x, const EisenInt& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
    friend EisenInt operator+(const EisenInt& x, const EisenInt& y) { return {x.a + y.a, x.b + y.b}; }
    friend EisenInt operator-(const EisenInt& x, const EisenInt& y) { return {x.a - y.a, x.b - y.b}; }
    friend EisenInt operator-(const EisenInt& x) { return {-x.a, -x.b}; }
    friend EisenInt operator*(const EisenInt& x, const EisenInt& y) {
        // (a1 + b1 w)(a2 + b2 w) = a1 a2 - b1 b2 + (a1 b2 + a2 b1 - b1 b2) w
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
};

// Hermite form of the sublattice m*R inside the coordinate lattice Z^2.
// Basis rows (h11, 0) and (h21, h22) with h11, h22 > 0 and 0 <= h21 < h11;
// the box {0..h11-1} x {0..h22-1} is a transversal of Z^2 / (m*R).
struct QuadHnf {
    Int h11, h21, h22;
};

namespace detail {

inline void int_xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    Int old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
    while (r != 0) {
        Int q = old_r / r; // truncated division is fine here
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s1; old_s = s1; s1 = tmp;
        tmp = old_t - q * t1; old_t = t1; t1 = tmp;
    }
    g = old_r; s = old_s; t = old_t;
    if (g < 0) { g = -g; s = -s; t = -t; }
}

inline QuadHnf quad_hnf(const Int& a1, const Int& b1, const Int& a2, const Int& b2) {
    // rows (a1,b1),(a2,b2) span the sublattice; bring to Hermite form
    Int g, s, t;
    int_xgcd(b1, b2, g, s, t);
    Int w2x = s * a1 + t * a2;      // second row: (w2x, g)
    Int w1x = (b2 / g) * a1 - (b1 / g) * a2; // first row: (w1x, 0)
    if (w1x < 0) w1x = -w1x;
    if (w1x == 0) throw DegenerateInput("degenerate lattice");
    Int h21 = floor_mod(w2x, w1x);
    return QuadHnf{w1x, h21, g};
}

} // namespace detail

struct GaussianRing {
    using Elem = GaussInt;
    static constexpr RingKind kind = RingKind::gaussian;
    static constexpr bool is_number_ring = true;

    std::string name() const { return "Z[i]"; }

    Elem zero() const { return {}; }
    Elem one() const { return {1, 0}; }
    Elem from_int(long long n) const { return {Int(n), 0}; }
    Elem imaginary_unit() const { return {0, 1}; }

    bool is_zero(const Elem& x) const { return x.a == 0 && x.b == 0; }
    bool is_unit(const Elem& x) const { return norm(x) == 1; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }

    Elem conj(const Elem& x) const { return {x.a, -x.b}; }

    Int norm(const Elem& x) const { return x.a * x.a + x.b * x.b; }

    void divmod(const Elem& x, const Elem& y, Elem& q, Elem& r) const {
        if (is_zero(y)) throw DegenerateInput("division by zero");
        Elem num = x * conj(y);
        Int n = norm(y);
        q = Elem{round_div(num.a, n), round_div(num.b, n)};
        r = x - q * y;
    }

    const std::vector<Elem>& units() const {
        static const std::vector<Elem> u{Elem{1, 0}, Elem{0, 1}, Elem{-1, 0}, Elem{0, -1}};
        return u;
    }

    // Rotate into the quadrant arg in [0, pi/2): a > 0, b >= 0.
    std::pair<Elem, Elem> canonical_associate(const Elem& x) const {
        if (is_zero(x)) throw DegenerateInput("canonical associate of zero");
        for (const Elem& u : units()) {
            Elem y = u * x;
            if (y.a > 0 && y.b >= 0) return {u, y};
        }
        throw Error("unreachable: no canonical associate found");
    }

    QuadHnf lattice_of(const Elem& m) const {
        // rows m*1 = (a, b), m*i = (-b, a)
        return detail::quad_hnf(m.a, m.b, -m.b, m.a);
    }

    Elem canonical_residue(const Elem& r, const Elem& m) const {
        if (is_zero(m)) throw DegenerateModulus();
        QuadHnf H = lattice_of(m);
        return reduce_in(H, m, r);
    }

    Elem reduce_in(const QuadHnf& H, const Elem& m, const Elem& r) const {
        Int y = floor_mod(r.b, H.h22);
        Int t2 = floor_div(r.b - y, H.h22);
        Int x = r.a - t2 * H.h21;
        // subtracting t2*(second row) fixed the w-coordinate; now reduce x
        (void)m;
        x = floor_mod(x, H.h11);
        return {x, y};
    }

    std::vector<Elem> residues(const Elem& m) const {
        if (is_zero(m)) throw DegenerateModulus();
        QuadHnf H = lattice_of(m);
        std::vector<Elem> out;
        out.reserve(static_cast<std::size_t>(H.h11 * H.h22));
        for (Int y = 0; y < H.h22; ++y)
            for (Int x = 0; x < H.h11; ++x) out.push_back(Elem{x, y});
        return out;
    }

    Elem element_at(std::uint64_t n) const {
        ensure_enumerated(n);
        return enum_cache_[n];
    }

    int cmp(const Elem& a, const Elem& b) const {
        if (a == b) return 0;
        return a < b ? -1 : 1;
    }

    Elem smallest_prime() const { return {1, 1}; }

    std::string str(const Elem& x) const {
        if (x.b == 0) return x.a.str();
        std::ostringstream os;
        if (x.a != 0) {
            os << x.a;
            if (x.b > 0) os << "+";
        }
        if (x.b == 1)
            os << "i";
        else if (x.b == -1)
            os << "-i";
        else
            os << x.b << "i";
        return os.str();
    }

  private:
    mutable std::vector<Elem> enum_cache_;
    mutable Int enum_norm_done_{-1};

    void ensure_enumerated(std::uint64_t n) const {
        while (enum_cache_.size() <= n) {
            Int v = enum_norm_done_ + 1;
            std::vector<Elem> shell;
            const Int s = boost::multiprecision::sqrt(v);
            for (Int b = -s; b <= s; ++b) {
                Int rest = v - b * b;
                Int a = boost::multiprecision::sqrt(rest);
                if (a * a == rest) {
                    shell.push_back(Elem{a, b});
                    if (a != 0) shell.push_back(Elem{-a, b});
                }
            }
            std::sort(shell.begin(), shell.end(), [](const Elem& x, const Elem& y) { return y < x; });
            shell.erase(std::unique(shell.begin(), shell.end()), shell.end());
            for (auto& e : shell) enum_cache_.push_back(e);
            enum_norm_done_ = v;
        }
    }
};

struct EisensteinRing {
    using Elem = EisenInt;
    static constexpr RingKind kind = RingKind::eisenstein;
    static constexpr bool is_number_ring = true;

    std::string name() const { return "Z[w]"; }

    Elem zero() const { return {}; }
    Elem one() const { return {1, 0}; }
    Elem from_int(long long n) const { return {Int(n), 0}; }
    Elem omega() const { return {0, 1}; }

    bool is_zero(const Elem& x) const { return x.a == 0 && x.b == 0; }
    bool is_unit(const Elem& x) const { return norm(x) == 1; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }

    Elem conj(const Elem& x) const { return {x.a - x.b, -x.b}; }

    Int norm(const Elem& x) const { return x.a * x.a - x.a * x.b + x.b * x.b; }

    void divmod(const Elem& x, const Elem& y, Elem& q, Elem& r) const {
        if (is_zero(y)) throw DegenerateInput("division by zero");
        Elem num = x * conj(y);
        Int n = norm(y);
        q = Elem{round_div(num.a, n), round_div(num.b, n)};
        r = x - q * y;
    }

    const std::vector<Elem>& units() const {
        // 1, w, w^2, -1, -w, -w^2  with w^2 = -1-w
        static const std::vector<Elem> u{Elem{1, 0},  Elem{0, 1},  Elem{-1, -1},
                                         Elem{-1, 0}, Elem{0, -1}, Elem{1, 1}};
        return u;
    }

    // Among the six associates restrict to a > 0 and take the lexicographically
    // least (a, b). Every nonzero element has an associate with a > 0.
    std::pair<Elem, Elem> canonical_associate(const Elem& x) const {
        if (is_zero(x)) throw DegenerateInput("canonical associate of zero");
        bool found = false;
        Elem best_u, best;
        for (const Elem& u : units()) {
            Elem y = u * x;
            if (y.a > 0 && (!found || y < best)) {
                found = true;
                best = y;
                best_u = u;
            }
        }
        if (!found) throw Error("unreachable: no canonical associate found");
        return {best_u, best};
    }

    QuadHnf lattice_of(const Elem& m) const {
        // rows m*1 = (a, b), m*w = (-b, a-b)
        return detail::quad_hnf(m.a, m.b, -m.b, m.a - m.b);
    }

    Elem canonical_residue(const Elem& r, const Elem& m) const {
        if (is_zero(m)) throw DegenerateModulus();
        QuadHnf H = lattice_of(m);
        return reduce_in(H, m, r);
    }

    Elem reduce_in(const QuadHnf& H, const Elem& m, const Elem& r) const {
        Int y = floor_mod(r.b, H.h22);
        Int t2 = floor_div(r.b - y, H.h22);
        Int x = r.a - t2 * H.h21;
        (void)m;
        x = floor_mod(x, H.h11);
        return {x, y};
    }

    std::vector<Elem> residues(const Elem& m) const {
        if (is_zero(m)) throw DegenerateModulus();
        QuadHnf H = lattice_of(m);
        std::vector<Elem> out;
        out.reserve(static_cast<std::size_t>(H.h11 * H.h22));
        for (Int y = 0; y < H.h22; ++y)
            for (Int x = 0; x < H.h11; ++x) out.push_back(Elem{x, y});
        return out;
    }

    Elem element_at(std::uint64_t n) const {
        ensure_enumerated(n);
        return enum_cache_[n];
    }

    int cmp(const Elem& a, const Elem& b) const {
        if (a == b) return 0;
        return a < b ? -1 : 1;
    }

    Elem smallest_prime() const { return {1, -1}; } // norm 3, canonical

    std::string str(const Elem& x) const {
        if (x.b == 0) return x.a.str();
        std::ostringstream os;
        if (x.a != 0) {
            os << x.a;
            if (x.b > 0) os << "+";
        }
        if (x.b == 1)
            os << "w";
        else if (x.b == -1)
            os << "-w";
        else
            os << x.b << "w";
        return os.str();
    }

  private:
    mutable std::vector<Elem> enum_cache_;
    mutable Int enum_norm_done_{-1};

    void ensure_enumerated(std::uint64_t n) const {
        while (enum_cache_.size() <= n) {
            Int v = enum_norm_done_ + 1;
            std::vector<Elem> shell;
            // a^2 - ab + b^2 = v  =>  (2a - b)^2 + 3 b^2 = 4v
            const Int s = boost::multiprecision::sqrt(Int(4) * v / 3);
            for (Int b = -s; b <= s; ++b) {
                Int rest = 4 * v - 3 * b * b;
                if (rest < 0) continue;
                Int t = boost::multiprecision::sqrt(rest);
                if (t * t != rest) continue;
                // 2a = b + t or b - t
                for (int sgn = 0; sgn < 2; ++sgn) {
                    Int twoa = sgn == 0 ? Int(b + t) : Int(b - t);
                    if (floor_mod(twoa, 2) != 0) continue;
                    shell.push_back(Elem{twoa / 2, b});
                }
            }
            std::sort(shell.begin(), shell.end(), [](const Elem& x, const Elem& y) { return y < x; });
            shell.erase(std::unique(shell.begin(), shell.end()), shell.end());
            for (auto& e : shell) enum_cache_.push_back(e);
            enum_norm_done_ = v;
        }
    }
};

// ---------------------------------------------------------------------------
// Polynomials over a finite field F_q, q = p^k <= 2^16
// ---------------------------------------------------------------------------

// Field context. Elements are encoded as integers in [0, q): the base-p
// digits are the coordinates over F_p relative to the power basis of the
// chosen irreducible modulus. Multiplication goes through exp/log tables.
struct FqCtx {
    std::uint32_t p = 0, deg = 1, q = 0;
    std::vector<std::uint32_t> exp_table, log_table;

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
        if (deg == 1) return (x + y) % p;
        std::uint32_t out = 0, mul = 1;
        for (std::uint32_t d = 0; d < deg; ++d) {
            out += ((x % p + y % p) % p) * mul;
            x /= p;
            y /= p;
            mul *= p;
        }
        return out;
    }
    std::uint32_t neg(std::uint32_t x) const {
        if (deg == 1) return (p - x) % p;
        std::uint32_t out = 0, mul = 1;
        for (std::uint32_t d = 0; d < deg; ++d) {
            out += ((p - x % p) % p) * mul;
            x /= p;
            mul *= p;
        }
        return out;
    }
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        if (x == 0 || y == 0) return 0;
        std::uint64_t e = std::uint64_t(log_table[x]) + log_table[y];
        return exp_table[e % (q - 1)];
    }
    std::uint32_t inv(std::uint32_t x) const {
        if (x == 0) throw DegenerateInput("inverse of zero field element");
        return exp_table[(q - 1 - log_table[x]) % (q - 1)];
    }
};

std::shared_ptr<const FqCtx> make_fq(std::uint32_t q);

struct FqPoly {
    std::shared_ptr<const FqCtx> F;
    std::vector<std::uint32_t> c; // coefficient codes, highest nonzero last; empty = 0

    FqPoly() = default;
    explicit FqPoly(std::shared_ptr<const FqCtx> f) : F(std::move(f)) {}
    FqPoly(std::shared_ptr<const FqCtx> f, std::vector<std::uint32_t> cc) : F(std::move(f)), c(std::move(cc)) {
        trim();
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero

    static void check(const FqPoly& x, const FqPoly& y) {
        if (!x.F || !y.F || x.F->q != y.F->q) throw RingMismatch("mixed finite fields");
    }

    friend bool operator==(const FqPoly& x, const FqPoly& y) { return x.c == y.c; }
    friend bool operator<(const FqPoly& x, const FqPoly& y) {
        if (x.c.size() != y.c.size()) return x.c.size() < y.c.size();
        for (std::size_t i = x.c.size(); i-- > 0;)
            if (x.c[i] != y.c[i]) return x.c[i] < y.c[i];
        return false;
    }
    friend FqPoly operator+(const FqPoly& x, const FqPoly& y) {
        check(x, y);
        FqPoly out(x.F);
        out.c.resize(std::max(x.c.size(), y.c.size()), 0);
        for (std::size_t i = 0; i < out.c.size(); ++i) {
            std::uint32_t xv = i < x.c.size() ? x.c[i] : 0;
            std::uint32_t yv = i < y.c.size() ? y.c[i] : 0;
            out.c[i] = x.F->add(xv, yv);
        }
        out.trim();
        return out;
    }
    friend FqPoly operator-(const FqPoly& x) {
        FqPoly out(x.F);
        out.c.resize(x.c.size());
        for (std::size_t i = 0; i < x.c.size(); ++i) out.c[i] = x.F->neg(x.c[i]);
        return out;
    }
    friend FqPoly operator-(const FqPoly& x, const FqPoly& y) { return x + (-y); }
    friend FqPoly operator*(const FqPoly& x, const FqPoly& y) {
        check(x, y);
        FqPoly out(x.F);
        if (x.c.empty() || y.c.empty()) return out;
        out.c.assign(x.c.size() + y.c.size() - 1, 0);
        for (std::size_t i = 0; i < x.c.size(); ++i) {
            if (x.c[i] == 0) continue;
            for (std::size_t j = 0; j < y.c.size(); ++j)
                out.c[i + j] = x.F->add(out.c[i + j], x.F->mul(x.c[i], y.c[j]));
        }
        out.trim();
        return out;
    }
};

class PolyRing {
  public:
    using Elem = FqPoly;
    static constexpr RingKind kind = RingKind::poly_fq;
    static constexpr bool is_number_ring = false;

    explicit PolyRing(std::uint32_t q) : F_(make_fq(q)) {}

    std::uint32_t q() const { return F_->q; }
    const std::shared_ptr<const FqCtx>& field() const { return F_; }

    std::string name() const { return "F" + std::to_string(F_->q) + "[T]"; }

    Elem zero() const { return Elem(F_); }
    Elem one() const { return from_const(1); }
    Elem variable() const { return Elem(F_, {0, 1}); }
    Elem from_const(std::uint32_t code) const {
        Elem e(F_);
        if (code % F_->q != 0) e.c = {code % F_->q};
        return e;
    }
    Elem from_int(long long n) const {
        // embed via the prime field
        long long r = n % static_cast<long long>(F_->p);
        if (r < 0) r += F_->p;
        return from_const(static_cast<std::uint32_t>(r));
    }

    bool is_zero(const Elem& x) const { return x.c.empty(); }
    bool is_unit(const Elem& x) const { return x.degree() == 0; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }

    void divmod(const Elem& a, const Elem& b, Elem& qout, Elem& rout) const {
        if (is_zero(b)) throw DegenerateInput("division by zero");
        Elem r = a;
        Elem q(F_);
        const int db = b.degree();
        const std::uint32_t lead_inv = F_->inv(b.c.back());
        if (r.degree() >= db) q.c.assign(static_cast<std::size_t>(r.degree() - db) + 1, 0);
        while (r.degree() >= db) {
            const int shift = r.degree() - db;
            const std::uint32_t f = F_->mul(r.c.back(), lead_inv);
            q.c[static_cast<std::size_t>(shift)] = f;
            for (int i = 0; i <= db; ++i) {
                auto idx = static_cast<std::size_t>(i + shift);
                r.c[idx] = F_->sub(r.c[idx], F_->mul(f, b.c[static_cast<std::size_t>(i)]));
            }
            r.trim();
        }
        q.trim();
        qout = q;
        rout = r;
    }

    Int norm(const Elem& x) const {
        if (x.c.empty()) return 0;
        return boost::multiprecision::pow(Int(F_->q), static_cast<unsigned>(x.degree()));
    }

    const std::vector<Elem>& units() const {
        if (units_.empty()) {
            for (std::uint32_t v = 1; v < F_->q; ++v) units_.push_back(from_const(v));
        }
        return units_;
    }

    std::pair<Elem, Elem> canonical_associate(const Elem& x) const {
        if (is_zero(x)) throw DegenerateInput("canonical associate of zero");
        Elem u = from_const(F_->inv(x.c.back()));
        return {u, u * x};
    }

    Elem canonical_residue(const Elem& r, const Elem& m) const {
        if (is_zero(m)) throw DegenerateModulus();
        Elem q, rem;
        divmod(r, m, q, rem);
        return rem;
    }

    std::vector<Elem> residues(const Elem& m) const {
        if (is_zero(m)) throw DegenerateModulus();
        const int d = m.degree();
        std::vector<Elem> out;
        Int count = boost::multiprecision::pow(Int(F_->q), static_cast<unsigned>(d));
        if (count > Int(1) << 24) throw DomainError("residue system too large to enumerate");
        for (Int n = 0; n < count; ++n) out.push_back(element_at(static_cast<std::uint64_t>(n)));
        return out;
    }

    // code order: the n-th element has base-q digits of n as coefficients
    Elem element_at(std::uint64_t n) const {
        Elem e(F_);
        while (n != 0) {
            e.c.push_back(static_cast<std::uint32_t>(n % F_->q));
            n /= F_->q;
        }
        return e;
    }

    int cmp(const Elem& a, const Elem& b) const {
        if (a == b) return 0;
        return a < b ? -1 : 1;
    }

    Elem smallest_prime() const { return variable(); }

    std::string str(const Elem& x) const {
        if (x.c.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = x.c.size(); i-- > 0;) {
            if (x.c[i] == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0) {
                os << x.c[i];
            } else {
                if (x.c[i] != 1) os << x.c[i];
                os << "T";
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

  private:
    std::shared_ptr<const FqCtx> F_;
    mutable std::vector<Elem> units_;
};

// ---------------------------------------------------------------------------
// FqCtx construction
// ---------------------------------------------------------------------------

namespace detail {

// dense polynomial arithmetic over the prime field F_p (digit vectors)
inline std::vector<std::uint32_t> fp_polymod(std::vector<std::uint32_t> a,
                                             const std::vector<std::uint32_t>& m, std::uint32_t p) {
    while (a.size() >= m.size() && !a.empty()) {
        if (a.back() == 0) { a.pop_back(); continue; }
        std::uint32_t lead = a.back(); // m is monic
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::uint64_t v = a[i + shift] + std::uint64_t(p) * p - std::uint64_t(lead) * m[i] % p;
            a[i + shift] = static_cast<std::uint32_t>(v % p);
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

inline std::vector<std::uint32_t> fp_polymul(const std::vector<std::uint32_t>& a,
                                             const std::vector<std::uint32_t>& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

inline std::vector<std::uint32_t> decode_digits(std::uint32_t code, std::uint32_t p, std::uint32_t deg) {
    std::vector<std::uint32_t> d;
    for (std::uint32_t i = 0; i < deg && code != 0; ++i) {
        d.push_back(code % p);
        code /= p;
    }
    while (!d.empty() && d.back() == 0) d.pop_back();
    return d;
}

inline std::uint32_t encode_digits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
    std::uint32_t code = 0, mul = 1;
    for (std::uint32_t x : d) {
        code += x * mul;
        mul *= p;
    }
    return code;
}

} // namespace detail

inline std::shared_ptr<const FqCtx> make_fq(std::uint32_t q) {
    static std::map<std::uint32_t, std::shared_ptr<const FqCtx>> cache;
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;

    if (q < 2 || q > (1u << 16)) throw DomainError("field size out of range");
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    if (p == 0) p = q;
    std::uint32_t deg = 0, qq = 1;
    while (qq < q) { qq *= p; ++deg; }
    if (qq != q) throw DomainError("field size is not a prime power");

    auto ctx = std::make_shared<FqCtx>();
    ctx->p = p;
    ctx->deg = deg;
    ctx->q = q;

    // an irreducible monic modulus of the right degree (trial division)
    std::vector<std::uint32_t> modpoly;
    if (deg > 1) {
        std::uint32_t span = 1;
        for (std::uint32_t i = 0; i < deg; ++i) span *= p;
        for (std::uint32_t low = 1; low < span; ++low) {
            std::vector<std::uint32_t> f = detail::decode_digits(low, p, deg);
            f.resize(deg, 0);
            f.push_back(1); // monic of degree `deg`
            bool irreducible = true;
            for (std::uint32_t gdeg = 1; irreducible && 2 * gdeg <= deg; ++gdeg) {
                std::uint32_t gspan = 1;
                for (std::uint32_t i = 0; i < gdeg; ++i) gspan *= p;
                for (std::uint32_t glow = 0; glow < gspan && irreducible; ++glow) {
                    std::vector<std::uint32_t> g = detail::decode_digits(glow, p, gdeg);
                    g.resize(gdeg, 0);
                    g.push_back(1);
                    if (detail::fp_polymod(f, g, p).empty()) irreducible = false;
                }
            }
            if (irreducible) { modpoly = f; break; }
        }
        if (modpoly.empty()) throw Error("no irreducible modulus found");
    }

    auto raw_mul = [&](std::uint32_t x, std::uint32_t y) -> std::uint32_t {
        if (deg == 1) return static_cast<std::uint32_t>((std::uint64_t(x) * y) % p);
        auto dx = detail::decode_digits(x, p, deg);
        auto dy = detail::decode_digits(y, p, deg);
        auto prod = detail::fp_polymod(detail::fp_polymul(dx, dy, p), modpoly, p);
        return detail::encode_digits(prod, p);
    };

    // find a multiplicative generator and fill exp/log
    ctx->exp_table.assign(q, 0);
    ctx->log_table.assign(q, 0);
    for (std::uint32_t cand = 2; cand < q; ++cand) {
        std::uint32_t x = cand, order = 1;
        while (x != 1) {
            x = raw_mul(x, cand);
            ++order;
            if (order > q) throw Error("generator search overran");
        }
        if (order == q - 1) {
            std::uint32_t v = 1;
            for (std::uint32_t j = 0; j + 1 < q; ++j) {
                ctx->exp_table[j] = v;
                ctx->log_table[v] = j;
                v = raw_mul(v, cand);
            }
            cache[q] = ctx;
            return ctx;
        }
    }
    if (q == 2) { // F_2 has the empty generator problem: unit group trivial
        ctx->exp_table[0] = 1;
        ctx->log_table[1] = 0;
        cache[q] = ctx;
        return ctx;
    }
    throw Error("no multiplicative generator found");
}

// ---------------------------------------------------------------------------
// Generic Euclidean helpers
// ---------------------------------------------------------------------------

template <class R> using elem_t = typename R::Elem;

template <class R> struct XgcdResult {
    elem_t<R> g, s, t; // g = s*a + t*b, g canonical
};

template <class R> XgcdResult<R> xgcd(const R& ring, const elem_t<R>& a, const elem_t<R>& b) {
    if (ring.is_zero(a) && ring.is_zero(b)) throw DegenerateInput("gcd of zero and zero");
    elem_t<R> old_r = a, r = b;
    elem_t<R> old_s = ring.one(), s = ring.zero();
    elem_t<R> old_t = ring.zero(), t = ring.one();
    while (!ring.is_zero(r)) {
        elem_t<R> q, rem;
        ring.divmod(old_r, r, q, rem);
        old_r = r;
        r = rem;
        elem_t<R> ns = ring.sub(old_s, ring.mul(q, s));
        old_s = s;
        s = ns;
        elem_t<R> nt = ring.sub(old_t, ring.mul(q, t));
        old_t = t;
        t = nt;
    }
    auto [u, g] = ring.canonical_associate(old_r);
    return {g, ring.mul(u, old_s), ring.mul(u, old_t)};
}

template <class R> elem_t<R> gcd_elem(const R& ring, const elem_t<R>& a, const elem_t<R>& b) {
    if (ring.is_zero(a) && ring.is_zero(b)) return ring.zero();
    if (ring.is_zero(a)) return ring.canonical_associate(b).second;
    if (ring.is_zero(b)) return ring.canonical_associate(a).second;
    elem_t<R> x = a, y = b;
    while (!ring.is_zero(y)) {
        elem_t<R> q, r;
        ring.divmod(x, y, q, r);
        x = y;
        y = r;
    }
    return ring.canonical_associate(x).second;
}

template <class R> elem_t<R> lcm_elem(const R& ring, const elem_t<R>& a, const elem_t<R>& b) {
    if (ring.is_zero(a) || ring.is_zero(b)) return ring.zero();
    elem_t<R> g = gcd_elem(ring, a, b);
    elem_t<R> q, r;
    ring.divmod(a, g, q, r);
    return ring.canonical_associate(ring.mul(q, b)).second;
}

template <class R> bool divides(const R& ring, const elem_t<R>& d, const elem_t<R>& a) {
    if (ring.is_zero(d)) return ring.is_zero(a);
    elem_t<R> q, r;
    ring.divmod(a, d, q, r);
    return ring.is_zero(r);
}

// exact quotient; caller guarantees divisibility
template <class R> elem_t<R> exact_div(const R& ring, const elem_t<R>& a, const elem_t<R>& d) {
    elem_t<R> q, r;
    ring.divmod(a, d, q, r);
    if (!ring.is_zero(r)) throw DomainError("exact division has remainder");
    return q;
}

// #R/(m); throws on the degenerate modulus
template <class R> Int norm_index(const R& ring, const elem_t<R>& m) {
    if (ring.is_zero(m)) throw DegenerateModulus();
    return ring.norm(m);
}

// invertible residues mod m, in transversal order
template <class R> std::vector<elem_t<R>> units_mod(const R& ring, const elem_t<R>& m) {
    if (ring.is_zero(m)) throw DegenerateModulus();
    if (ring.is_unit(m)) throw DegenerateInput("units mod a unit");
    std::vector<elem_t<R>> out;
    for (const auto& r : ring.residues(m)) {
        if (ring.is_zero(r)) continue;
        if (ring.is_unit(gcd_elem(ring, r, m))) out.push_back(r);
    }
    return out;
}

// elements of norm <= bound in enumeration order (norm ascending)
template <class R> std::vector<elem_t<R>> elements_up_to_norm(const R& ring, const Int& bound) {
    std::vector<elem_t<R>> out;
    for (std::uint64_t n = 0;; ++n) {
        elem_t<R> e = ring.element_at(n);
        if (ring.norm(e) > bound) break;
        out.push_back(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Runtime ring selection (CLI and tests)
// ---------------------------------------------------------------------------

struct RingChoice {
    RingKind kind = RingKind::integers;
    std::uint32_t q = 2; // for poly_fq
};

template <class F> decltype(auto) with_ring(const RingChoice& rc, F&& f) {
    switch (rc.kind) {
    case RingKind::integers: return f(ZRing{});
    case RingKind::gaussian: return f(GaussianRing{});
    case RingKind::eisenstein: return f(EisensteinRing{});
    case RingKind::poly_fq: return f(PolyRing(rc.q));
    }
    throw DomainError("unknown ring kind");
}

inline RingChoice parse_ring_choice(const std::string& s) {
    if (s == "z") return {RingKind::integers, 0};
    if (s == "zi") return {RingKind::gaussian, 0};
    if (s == "zw") return {RingKind::eisenstein, 0};
    if (s.rfind("fq:", 0) == 0) {
        unsigned long v = std::stoul(s.substr(3));
        if (v < 2 || v > (1ul << 16)) throw DomainError("field size out of range");
        return {RingKind::poly_fq, static_cast<std::uint32_t>(v)};
    }
    throw DomainError("unknown ring: " + s + " (expected z|zi|zw|fq:<q>)");
}

} // namespace ringstar
