#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pdmom/laurent.hpp"
#include "pdmom/rational.hpp"

namespace pdmom {

/// Partial-fraction term: weights[e] / (z - pole)^(e+1), e = 0 .. multiplicity-1.
template <class Scalar>
struct PoleTerm {
    Scalar pole;
    std::vector<Scalar> weights;
};

/// Rational function that is regular at infinity and vanishes there,
/// held in partial-fraction form. Pole terms whose weights are all zero
/// are dropped, so the zero function has no terms.
template <class Scalar>
class RationalFunction {
public:
    RationalFunction() = default;

    explicit RationalFunction(std::vector<PoleTerm<Scalar>> terms) {
        for (PoleTerm<Scalar>& t : terms) {
            while (!t.weights.empty() && t.weights.back() == Scalar(0)) t.weights.pop_back();
            if (!t.weights.empty()) terms_.push_back(std::move(t));
        }
    }

    const std::vector<PoleTerm<Scalar>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of z^(-k-1) in the expansion at infinity:
    /// w / (z-p)^(e+1) contributes w * C(k,e) * p^(k-e), with the
    /// convention that a pole at 0 contributes only at k = e.
    Scalar series_coefficient(long k) const {
        Scalar acc(0);
        for (const PoleTerm<Scalar>& t : terms_) {
            for (size_t e = 0; e < t.weights.size(); ++e) {
                const long ee = static_cast<long>(e);
                if (k < ee) continue;
                if (t.pole == Scalar(0)) {
                    if (k == ee) acc += t.weights[e];
                    continue;
                }
                Scalar binom = falling_factorial<Scalar>(k, static_cast<int>(e)) /
                               falling_factorial<Scalar>(ee, static_cast<int>(e));
                Scalar power(1);
                for (long i = 0; i < k - ee; ++i) power *= t.pole;
                acc += t.weights[e] * binom * power;
            }
        }
        return acc;
    }

    /// Expansion at infinity through z^(-truncation_order).
    LaurentTail<Scalar> laurent(int truncation_order) const {
        std::vector<Scalar> v;
        v.reserve(static_cast<size_t>(truncation_order));
        for (int t = 1; t <= truncation_order; ++t) v.push_back(series_coefficient(t - 1));
        return LaurentTail<Scalar>(1, std::move(v), truncation_order);
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const PoleTerm<Scalar>& t : terms_) {
            for (size_t e = 0; e < t.weights.size(); ++e) {
                if (t.weights[e] == Scalar(0)) continue;
                if (!out.empty()) out += " + ";
                out += "(" + scalar_str(t.weights[e]) + ")/(z - " + scalar_str(t.pole) + ")";
                if (e > 0) out += "^" + std::to_string(e + 1);
            }
        }
        return out;
    }

private:
    static std::string scalar_str(const Rat& c) { return pdmom::to_string(c); }
    static std::string scalar_str(double c) { return std::to_string(c); }

    std::vector<PoleTerm<Scalar>> terms_;
};

}  // namespace pdmom
