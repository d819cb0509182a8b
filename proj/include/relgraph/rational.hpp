#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "relgraph/error.hpp"

namespace relgraph {

// Element of Q(i). Both parts are kept canonical (mpq_class normalizes after
// every arithmetic operation), so equality is structural.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}
    GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    // |z|^2 as an exact rational.
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const {
        if (is_zero()) {
            throw domain_error("division_by_zero", "inverse of zero Gaussian rational");
        }
        mpq_class n = norm2();
        return {re_ / n, -im_ / n};
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inverse();
    }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
        os << z.re_.get_str();
        if (sgn(z.im_) != 0) {
            os << (sgn(z.im_) > 0 ? "+" : "") << z.im_.get_str() << "i";
        }
        return os;
    }

private:
    mpq_class re_ = 0;
    mpq_class im_ = 0;
};

// Canonical "p/q" form; integers are written as "p/1" so every coefficient
// string has the same shape.
inline std::string rational_to_string(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "p/q", "p", and finite decimals such as "-0.25" or "1e-3" (converted
// exactly). Denominators must be nonzero.
inline mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    auto fail = [&]() -> mpq_class { throw parse_error("invalid rational literal '" + s + "'"); };
    if (s.empty()) {
        return fail();
    }
    auto is_int = [](std::string_view t) {
        std::size_t k = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (k == t.size()) {
            return false;
        }
        for (; k < t.size(); ++k) {
            if (t[k] < '0' || t[k] > '9') {
                return false;
            }
        }
        return true;
    };
    auto to_mpz = [](std::string_view t) {
        if (!t.empty() && t[0] == '+') {
            t.remove_prefix(1);
        }
        return mpz_class(std::string(t), 10);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string_view num(s.data(), slash);
        std::string_view den(s.data() + slash + 1, s.size() - slash - 1);
        if (!is_int(num) || !is_int(den)) {
            return fail();
        }
        mpz_class d = to_mpz(den);
        if (d == 0) {
            return fail();
        }
        mpq_class q(to_mpz(num), d);
        q.canonicalize();
        return q;
    }
    if (is_int(s)) {
        return mpq_class(to_mpz(s));
    }
    // decimal with optional exponent
    std::string mant = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        std::string ex = s.substr(e + 1);
        if (!is_int(ex) || ex.size() > 6) {
            return fail();
        }
        exp10 = std::stol(ex);
        mant = s.substr(0, e);
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.erase(0, 1);
    }
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || !is_int(digits)) {
        return fail();
    }
    mpz_class n(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 < 0 ? mpq_class(n, scale) : mpq_class(n * scale);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

} // namespace relgraph
