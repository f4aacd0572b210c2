#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace oge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Splits r >= 0 as s^2 * m with m squarefree (small prime factors removed,
/// plus a perfect-square check on the remainder).
inline void split_square(Int r, Int& s, Int& m) {
    s = 1;
    if (r == 0) { m = 0; return; }
    for (Int d = 2; d <= 1000 && d * d <= r; ++d) {
        while (r % (d * d) == 0) { r /= d * d; s *= d; }
    }
    Int t = boost::multiprecision::sqrt(r);
    if (t * t == r) { s *= t; r = 1; }
    m = r;
}

/// Element of the real quadratic field Q(sqrt(m)): value = a + b*sqrt(m).
/// m is a squarefree integer >= 2 whenever b != 0, and 0 for plain rationals.
/// A single computation never mixes two different radicands; incompatible
/// operands throw.
class QSqrt {
public:
    QSqrt() : a_(0), b_(0), m_(0) {}
    QSqrt(int v) : a_(v), b_(0), m_(0) {}
    QSqrt(long v) : a_(v), b_(0), m_(0) {}
    QSqrt(const Rat& v) : a_(v), b_(0), m_(0) {}
    QSqrt(const Rat& a, const Rat& b, const Int& m) : a_(a), b_(b), m_(m) {
        if (b_ == 0) m_ = 0;
    }

    static QSqrt sqrt_of(const Rat& r) {
        if (r < 0) throw std::domain_error("QSqrt::sqrt_of: negative radicand");
        if (r == 0) return QSqrt();
        Int p = boost::multiprecision::numerator(r);
        Int q = boost::multiprecision::denominator(r);
        Int s, m;
        split_square(p * q, s, m);
        // sqrt(p/q) = sqrt(p*q)/q = (s/q) * sqrt(m)
        if (m == 1) return QSqrt(Rat(s, q));
        return QSqrt(Rat(0), Rat(s, q), m);
    }

    const Rat& rat_part() const { return a_; }
    const Rat& sqrt_coef() const { return b_; }
    const Int& radicand() const { return m_; }
    bool is_rational() const { return b_ == 0; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    /// Exact sign of a + b*sqrt(m).
    int sign() const {
        int sa = a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
        int sb = b_ == 0 ? 0 : (b_ > 0 ? 1 : -1);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 against b^2*m
        Rat lhs = a_ * a_, rhs = b_ * b_ * Rat(m_);
        if (lhs == rhs) return 0;  // cannot happen for squarefree m >= 2
        return lhs > rhs ? sa : sb;
    }

    double value() const {
        double v = to_double(a_);
        if (b_ != 0) v += to_double(b_) * std::sqrt(m_.convert_to<double>());
        return v;
    }

    QSqrt operator-() const { return QSqrt(-a_, -b_, m_); }

    friend QSqrt operator+(const QSqrt& x, const QSqrt& y) {
        Int m = unify(x, y);
        return QSqrt(x.a_ + y.a_, x.b_ + y.b_, m);
    }
    friend QSqrt operator-(const QSqrt& x, const QSqrt& y) { return x + (-y); }
    friend QSqrt operator*(const QSqrt& x, const QSqrt& y) {
        Int m = unify(x, y);
        return QSqrt(x.a_ * y.a_ + x.b_ * y.b_ * Rat(m),
                     x.a_ * y.b_ + x.b_ * y.a_, m);
    }
    friend QSqrt operator/(const QSqrt& x, const QSqrt& y) {
        if (y.is_zero()) throw std::domain_error("QSqrt: division by zero");
        Rat den = y.a_ * y.a_ - y.b_ * y.b_ * Rat(y.m_);
        QSqrt conj(y.a_ / den, -y.b_ / den, y.m_);
        return x * conj;
    }
    QSqrt& operator+=(const QSqrt& y) { *this = *this + y; return *this; }
    QSqrt& operator-=(const QSqrt& y) { *this = *this - y; return *this; }
    QSqrt& operator*=(const QSqrt& y) { *this = *this * y; return *this; }
    QSqrt& operator/=(const QSqrt& y) { *this = *this / y; return *this; }

    friend bool operator==(const QSqrt& x, const QSqrt& y) {
        return (x - y).is_zero();
    }
    friend bool operator!=(const QSqrt& x, const QSqrt& y) { return !(x == y); }
    friend bool operator<(const QSqrt& x, const QSqrt& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QSqrt& x, const QSqrt& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const QSqrt& x, const QSqrt& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const QSqrt& x, const QSqrt& y) { return (x - y).sign() >= 0; }

    friend QSqrt abs(const QSqrt& x) { return x.sign() < 0 ? -x : x; }

    std::string str() const {
        std::string s = a_.str();
        if (b_ != 0) s += " + (" + b_.str() + ")*sqrt(" + m_.str() + ")";
        return s;
    }

private:
    static Int unify(const QSqrt& x, const QSqrt& y) {
        if (x.b_ == 0) return y.m_;
        if (y.b_ == 0) return x.m_;
        if (x.m_ != y.m_)
            throw std::logic_error("QSqrt: mixing sqrt(" + x.m_.str() + ") with sqrt(" + y.m_.str() + ")");
        return x.m_;
    }

    Rat a_, b_;
    Int m_;
};

/// Uniform scalar interface for the two numeric backends: exact Q(sqrt(m))
/// elements and 64-bit floats.
template <class S> struct scalar_ops;

template <> struct scalar_ops<double> {
    static constexpr bool exact = false;
    static double from_int(long v) { return double(v); }
    static double frac(long p, long q) { return double(p) / double(q); }
    static double sqrt(double x) {
        if (x < 0) throw std::domain_error("sqrt of negative value");
        return std::sqrt(x);
    }
    static double value(double x) { return x; }
    static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
    static double abs(double x) { return std::abs(x); }
    static int sign(double x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }
};

template <> struct scalar_ops<QSqrt> {
    static constexpr bool exact = true;
    static QSqrt from_int(long v) { return QSqrt(v); }
    static QSqrt frac(long p, long q) { return QSqrt(Rat(p, q)); }
    static QSqrt sqrt(const QSqrt& x) {
        if (!x.is_rational())
            throw std::domain_error("QSqrt: nested radicals unsupported");
        return QSqrt::sqrt_of(x.rat_part());
    }
    static double value(const QSqrt& x) { return x.value(); }
    static bool is_zero(const QSqrt& x, double) { return x.is_zero(); }
    static QSqrt abs(const QSqrt& x) { return x.sign() < 0 ? -x : x; }
    static int sign(const QSqrt& x) { return x.sign(); }
};

}  // namespace oge
