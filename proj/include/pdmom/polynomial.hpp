#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "pdmom/errors.hpp"
#include "pdmom/rational.hpp"

namespace pdmom {

/// Dense univariate polynomial, coefficients lowest power first.
/// The zero polynomial is the empty coefficient list; otherwise the
/// highest-power coefficient is nonzero. degree() is -1 for zero.
template <class Scalar>
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { normalize(); }

    static Polynomial constant(Scalar c) { return Polynomial({std::move(c)}); }

    /// x^k with coefficient c.
    static Polynomial monomial(Scalar c, int k) {
        std::vector<Scalar> v(static_cast<size_t>(k) + 1, Scalar(0));
        v.back() = std::move(c);
        return Polynomial(std::move(v));
    }

    static Polynomial from_roots(const std::vector<Scalar>& roots) {
        Polynomial result({Scalar(1)});
        for (const Scalar& r : roots) result = result * Polynomial({-r, Scalar(1)});
        return result;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Scalar>& coefficients() const { return coeffs_; }

    /// Coefficient of x^i; zero outside the stored range.
    Scalar coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Scalar(0);
        return coeffs_[static_cast<size_t>(i)];
    }

    Scalar leading() const { return is_zero() ? Scalar(0) : coeffs_.back(); }

    Scalar operator()(const Scalar& x) const {
        Scalar acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial operator-() const {
        std::vector<Scalar> v = coeffs_;
        for (Scalar& c : v) c = -c;
        return Polynomial(std::move(v));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar(0));
        for (size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Polynomial(std::move(v));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const Scalar& c, const Polynomial& p) {
        std::vector<Scalar> v = p.coeffs_;
        for (Scalar& x : v) x *= c;
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const Polynomial& p, const Scalar& c) { return c * p; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// r-th derivative; the zero polynomial when r > degree.
    Polynomial derivative(int r = 1) const {
        Polynomial p = *this;
        for (int t = 0; t < r && !p.is_zero(); ++t) {
            std::vector<Scalar> v;
            v.reserve(p.coeffs_.size());
            for (size_t i = 1; i < p.coeffs_.size(); ++i) v.push_back(Scalar(static_cast<long>(i)) * p.coeffs_[i]);
            p = Polynomial(std::move(v));
        }
        return p;
    }

    /// Antiderivative with zero constant term.
    Polynomial antiderivative() const {
        std::vector<Scalar> v(coeffs_.size() + 1, Scalar(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) v[i + 1] = coeffs_[i] / Scalar(static_cast<long>(i + 1));
        return Polynomial(std::move(v));
    }

    /// Exact definite integral over [a, b].
    Scalar integral(const Scalar& a, const Scalar& b) const {
        Polynomial f = antiderivative();
        return f(b) - f(a);
    }

    /// p(x + c) via repeated synthetic division (exact Taylor shift).
    Polynomial taylor_shift(const Scalar& c) const {
        std::vector<Scalar> v = coeffs_;
        for (size_t cut = 0; cut + 1 < v.size(); ++cut)
            for (size_t i = v.size() - 1; i > cut; --i) v[i - 1] += c * v[i];
        return Polynomial(std::move(v));
    }

    /// p(-x).
    Polynomial reflect() const {
        std::vector<Scalar> v = coeffs_;
        for (size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
        return Polynomial(std::move(v));
    }

    Polynomial pow(int e) const {
        Polynomial result({Scalar(1)});
        for (int t = 0; t < e; ++t) result = result * *this;
        return result;
    }

    /// Euclidean division: returns {quotient, remainder} with deg rem < deg divisor.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw ZeroPolynomialError("polynomial division by zero");
        Polynomial rem = a;
        Polynomial quot;
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            int shift = rem.degree() - b.degree();
            Scalar factor = rem.leading() / b.leading();
            quot = quot + Polynomial::monomial(factor, shift);
            rem = rem - Polynomial::monomial(factor, shift) * b;
        }
        return {quot, rem};
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            Scalar c = coeff(i);
            if (c == Scalar(0)) continue;
            if (!out.empty()) out += " + ";
            out += scalar_str(c);
            if (i >= 1) out += "*" + var;
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out;
    }

    template <class To>
    Polynomial<To> convert() const {
        std::vector<To> v;
        v.reserve(coeffs_.size());
        for (const Scalar& c : coeffs_) v.push_back(static_cast<To>(to_double(c)));
        return Polynomial<To>(std::move(v));
    }

private:
    static std::string scalar_str(const Rat& c) { return pdmom::to_string(c); }
    static std::string scalar_str(double c) { return std::to_string(c); }

    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == Scalar(0)) coeffs_.pop_back();
    }

    std::vector<Scalar> coeffs_;
};

using RatPoly = Polynomial<Rat>;

namespace detail {

/// Clears denominators and strips powers of x; positive roots are unchanged.
inline std::vector<Int> integer_profile(const RatPoly& p) {
    Int lcm = 1;
    for (const Rat& c : p.coefficients()) lcm = boost::multiprecision::lcm(lcm, denominator(c));
    std::vector<Int> v;
    bool low_zeros_done = false;
    for (const Rat& c : p.coefficients()) {
        Int scaled = numerator(c * Rat(lcm));
        if (!low_zeros_done && scaled == 0) continue;  // strip x | p
        low_zeros_done = true;
        v.push_back(scaled);
    }
    return v;
}

}  // namespace detail

/// Exactly the set {k in Z, k >= 1 : p(k) = 0}, via rational-root-theorem
/// candidates (divisors of the constant term after clearing denominators,
/// capped by the Cauchy bound) and exact re-evaluation.
inline std::vector<long> positive_integer_roots(const RatPoly& p) {
    if (p.is_zero()) throw ZeroPolynomialError("positive_integer_roots: zero polynomial");
    std::vector<Int> c = detail::integer_profile(p);
    if (c.size() <= 1) return {};  // nonzero constant after stripping x-powers

    // Any integer root k divides c[0] and satisfies |k| <= 1 + max |c_i| / |c_lead|.
    Int a0 = boost::multiprecision::abs(c.front());
    Int lead = boost::multiprecision::abs(c.back());
    Int cauchy = 0;
    for (size_t i = 0; i + 1 < c.size(); ++i) {
        Int mag = boost::multiprecision::abs(c[i]);
        if (mag > cauchy) cauchy = mag;
    }
    cauchy = cauchy / lead + 1;

    auto is_root = [&](const Int& k) {
        Int acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * k + *it;
        return acc == 0;
    };

    std::vector<long> roots;
    Int limit = std::min(boost::multiprecision::sqrt(a0), cauchy);
    for (Int d = 1; d <= limit; ++d) {
        if (a0 % d != 0) continue;
        if (is_root(d)) roots.push_back(d.convert_to<long>());
        Int e = a0 / d;
        if (e != d && e <= cauchy && is_root(e)) roots.push_back(e.convert_to<long>());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Number of distinct real roots of p in the closed interval [a, b]
/// (Sturm chain, exact arithmetic).
inline int count_real_roots_in(const RatPoly& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) throw ZeroPolynomialError("count_real_roots_in: zero polynomial");
    if (a > b) throw RangeError("count_real_roots_in: a > b");
    std::vector<RatPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        auto [q, r] = divmod(chain[chain.size() - 2], chain.back());
        chain.push_back(-r);
    }
    chain.pop_back();

    auto variations = [&](const Rat& x) {
        int count = 0;
        int prev = 0;
        for (const RatPoly& f : chain) {
            Rat v = f(x);
            int sign = v == 0 ? 0 : (v > 0 ? 1 : -1);
            if (sign != 0) {
                if (prev != 0 && sign != prev) ++count;
                prev = sign;
            }
        }
        return count;
    };

    int inside = variations(a) - variations(b);  // roots in (a, b]
    if (p(a) == 0) ++inside;
    return inside;
}

}  // namespace pdmom
