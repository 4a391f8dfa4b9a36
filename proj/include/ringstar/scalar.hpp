#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>
#include <utility>

#include "ringstar/errors.hpp"

namespace ringstar {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exact complex-rational scalar. All structure constants of the dense
/// *-subalgebra are rational, so symbolic computations never touch floats.
struct Scalar {
    Rat re{0};
    Rat im{0};

    Scalar() = default;
    Scalar(int n) : re(n) {}                            // NOLINT(google-explicit-constructor)
    Scalar(Rat r) : re(std::move(r)) {}                 // NOLINT(google-explicit-constructor)
    Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    Scalar conj() const { return {re, -im}; }

    // |z|^2, always an exact rational.
    Rat abs_sq() const { return re * re + im * im; }

    friend Scalar operator+(const Scalar& x, const Scalar& y) { return {x.re + y.re, x.im + y.im}; }
    friend Scalar operator-(const Scalar& x, const Scalar& y) { return {x.re - y.re, x.im - y.im}; }
    friend Scalar operator-(const Scalar& x) { return {-x.re, -x.im}; }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) {
        Rat d = y.abs_sq();
        if (d == 0) throw DegenerateInput("scalar division by zero");
        return {(x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d};
    }
    Scalar& operator+=(const Scalar& y) { re += y.re; im += y.im; return *this; }
    Scalar& operator-=(const Scalar& y) { re -= y.re; im -= y.im; return *this; }
    Scalar& operator*=(const Scalar& y) { *this = *this * y; return *this; }

    friend bool operator==(const Scalar& x, const Scalar& y) { return x.re == y.re && x.im == y.im; }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
    friend bool operator<(const Scalar& x, const Scalar& y) {
        if (x.re != y.re) return x.re < y.re;
        return x.im < y.im;
    }

    double to_double_re() const { return static_cast<double>(re); }
    double to_double_im() const { return static_cast<double>(im); }
};

inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline std::string scalar_str(const Scalar& s) {
    if (s.im == 0) return rat_str(s.re);
    std::ostringstream os;
    if (s.re == 0) {
        if (s.im == 1) return "i";
        if (s.im == -1) return "-i";
        os << s.im << "i";
        return os.str();
    }
    os << "(" << s.re;
    if (s.im > 0) os << "+";
    if (s.im == 1)
        os << "i";
    else if (s.im == -1)
        os << "-i";
    else
        os << s.im << "i";
    os << ")";
    return os.str();
}

/// Exact square root of a rational, when it exists. Used for sup-norms of
/// diagonal elements, whose squared norm is always rational.
inline bool rational_sqrt(const Rat& x, Rat& out) {
    if (x < 0) return false;
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    const Int sn = boost::multiprecision::sqrt(num);
    const Int sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return false;
    out = Rat(sn, sd);
    return true;
}

} // namespace ringstar
