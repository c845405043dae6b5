#pragma once

#include <algorithm>
#include <vector>

#include "pdmom/errors.hpp"
#include "pdmom/polynomial.hpp"

namespace pdmom {

/// Truncated Laurent series at infinity: sum of c_t z^(-t) for
/// t = start_power .. truncation_order, start_power >= 1. Only the principal
/// part at infinity is tracked; operations that would produce nonnegative
/// powers of z clip them. Every operation propagates the order through which
/// the result is trustworthy.
template <class Scalar>
class LaurentTail {
public:
    /// Zero series trusted through `truncation_order`.
    explicit LaurentTail(int truncation_order) : start_(1), trunc_(truncation_order) {
        if (truncation_order < 0) throw RangeError("LaurentTail: negative truncation order");
        coeffs_.assign(static_cast<size_t>(std::max(0, trunc_ - start_ + 1)), Scalar(0));
    }

    LaurentTail(int start_power, std::vector<Scalar> coeffs, int truncation_order)
        : start_(start_power), trunc_(truncation_order), coeffs_(std::move(coeffs)) {
        if (start_ < 1) throw RangeError("LaurentTail: start power must be >= 1");
        if (trunc_ - start_ + 1 != static_cast<int>(coeffs_.size()))
            throw RangeError("LaurentTail: coefficient count does not match orders");
    }

    int start_power() const { return start_; }
    int truncation_order() const { return trunc_; }

    /// Coefficient of z^(-t). Zero below start_power; beyond the truncation
    /// order the coefficient is unknown and asking for it is an error.
    Scalar coeff(int t) const {
        if (t > trunc_) throw RangeError("LaurentTail: coefficient beyond truncation order");
        if (t < start_) return Scalar(0);
        return coeffs_[static_cast<size_t>(t - start_)];
    }

    /// Term-wise d/dz: c_t z^(-t) -> -t c_t z^(-t-1).
    LaurentTail derivative() const {
        std::vector<Scalar> v;
        v.reserve(coeffs_.size());
        for (int t = start_; t <= trunc_; ++t) v.push_back(Scalar(-t) * coeff(t));
        return LaurentTail(start_ + 1, std::move(v), trunc_ + 1);
    }

    /// Multiplication by a polynomial in z. Powers z^i shift coefficients
    /// toward z^(-1); results at nonnegative powers of z are dropped and the
    /// trusted order shrinks by deg p.
    LaurentTail mul_poly(const Polynomial<Scalar>& p) const {
        if (p.is_zero()) return LaurentTail(trunc_);
        const int d = p.degree();
        const int out_trunc = trunc_ - d;
        const int out_start = std::max(1, start_ - d);
        if (out_trunc < out_start) return LaurentTail(std::max(0, out_trunc));
        std::vector<Scalar> v;
        v.reserve(static_cast<size_t>(out_trunc - out_start + 1));
        for (int u = out_start; u <= out_trunc; ++u) {
            Scalar acc(0);
            for (int i = 0; i <= d; ++i) acc += p.coeff(i) * coeff(u + i);
            v.push_back(acc);
        }
        return LaurentTail(out_start, std::move(v), out_trunc);
    }

    /// Sum; trusted only as far as both operands are.
    friend LaurentTail operator+(const LaurentTail& a, const LaurentTail& b) {
        const int trunc = std::min(a.trunc_, b.trunc_);
        const int start = std::min(a.start_, b.start_);
        if (trunc < start) return LaurentTail(std::max(0, trunc));
        std::vector<Scalar> v;
        v.reserve(static_cast<size_t>(trunc - start + 1));
        for (int t = start; t <= trunc; ++t) v.push_back(a.coeff(t) + b.coeff(t));
        return LaurentTail(start, std::move(v), trunc);
    }

    friend LaurentTail operator-(const LaurentTail& a, const LaurentTail& b) {
        LaurentTail neg = b;
        for (Scalar& c : neg.coeffs_) c = -c;
        return a + neg;
    }

private:
    int start_;
    int trunc_;
    std::vector<Scalar> coeffs_;
};

}  // namespace pdmom
