#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nlhive {

/// Dense univariate polynomial, coefficients in ascending order, never with
/// trailing zeros. T is mpq_class or mpz_class.
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static Poly monomial(const T& coeff, int degree) {
        std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
        c.back() = coeff;
        return Poly(std::move(c));
    }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<T>& coeffs() const noexcept { return c_; }
    T coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : T(0); }

    T operator()(const T& x) const {
        T r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const T& s) {
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly pow(unsigned e) const {
        Poly r{1}, b = *this;
        for (; e; e >>= 1, b = b * b)
            if (e & 1) r = r * b;
        return r;
    }

    /// Quotient and remainder. The divisor's leading coefficient must divide
    /// every leading coefficient met on the way (always true over Q, and over
    /// Z for divisors with leading coefficient +-1).
    friend std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<T> q(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0, T(0));
        while (!a.is_zero() && a.degree() >= b.degree()) {
            int shift = a.degree() - b.degree();
            T lead = a.c_.back() / b.c_.back();
            if constexpr (std::is_same_v<T, mpz_class>)
                if (lead * b.c_.back() != a.c_.back()) throw std::domain_error("inexact integer division");
            q[shift] = lead;
            for (int k = 0; k <= b.degree(); ++k) a.c_[k + shift] -= lead * b.c_[k];
            a.trim();
        }
        return {Poly(std::move(q)), std::move(a)};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

using QPoly = Poly<mpq_class>;
using ZPoly = Poly<mpz_class>;

QPoly to_rational(const ZPoly& p);

/// nullopt when some coefficient is not an integer.
std::optional<ZPoly> to_integer(const QPoly& p);

/// Highest power first, e.g. "3w^2+3w+1"; "0" for the zero polynomial.
std::string render(const ZPoly& p, char var);

/// "(7t^3+43t^2+126t+240)/3840" style: common denominator pulled out.
std::string render(const QPoly& p, char var);

}  // namespace nlhive
