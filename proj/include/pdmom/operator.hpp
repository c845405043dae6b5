#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdmom/errors.hpp"
#include "pdmom/polynomial.hpp"
#include "pdmom/polyroots.hpp"
#include "pdmom/rational.hpp"

namespace pdmom {

/// Linear differential operator p_n(x) d^n + ... + p_1(x) d + p_0(x),
/// order n >= 1 with p_n nonzero. Immutable after construction.
template <class Scalar>
class DiffOperator {
public:
    /// coeffs = p_0 .. p_n, lowest derivative order first.
    explicit DiffOperator(std::vector<Polynomial<Scalar>> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 2) throw RangeError("DiffOperator: order must be >= 1");
        if (coeffs_.back().is_zero()) throw ZeroPolynomialError("DiffOperator: p_n is the zero polynomial");
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Polynomial<Scalar>& coeff(int j) const { return coeffs_[static_cast<size_t>(j)]; }
    const std::vector<Polynomial<Scalar>>& coefficients() const { return coeffs_; }

    /// a_{i,j}: coefficient of x^i in p_j; zero outside range.
    Scalar entry(int i, int j) const {
        if (j < 0 || j > order()) return Scalar(0);
        return coeffs_[static_cast<size_t>(j)].coeff(i);
    }

    /// d_j = deg p_j (-1 for a zero coefficient polynomial).
    int coeff_degree(int j) const { return coeffs_[static_cast<size_t>(j)].degree(); }

    /// Exact L u = sum_j p_j u^(j).
    Polynomial<Scalar> apply(const Polynomial<Scalar>& u) const {
        Polynomial<Scalar> result;
        Polynomial<Scalar> du = u;
        for (int j = 0; j <= order(); ++j) {
            result = result + coeffs_[static_cast<size_t>(j)] * du;
            du = du.derivative();
        }
        return result;
    }

    /// Formal adjoint L* v = sum_j (-1)^j d^j (p_j v), expanded by Leibniz
    /// into the same coefficient representation:
    /// adjoint p*_t = sum_{j >= t} (-1)^j C(j,t) p_j^(j-t).
    DiffOperator adjoint() const {
        const int n = order();
        std::vector<Polynomial<Scalar>> adj(static_cast<size_t>(n) + 1);
        for (int t = 0; t <= n; ++t) {
            Polynomial<Scalar> acc;
            for (int j = t; j <= n; ++j) {
                Scalar c = Scalar(static_cast<long>((j % 2 == 0) ? 1 : -1)) *
                           Scalar(binomial(j, t).template convert_to<long>());
                acc = acc + c * coeffs_[static_cast<size_t>(j)].derivative(j - t);
            }
            adj[static_cast<size_t>(t)] = acc;
        }
        return DiffOperator(std::move(adj));
    }

    template <class To>
    DiffOperator<To> convert() const {
        std::vector<Polynomial<To>> v;
        v.reserve(coeffs_.size());
        for (const auto& p : coeffs_) v.push_back(p.template convert<To>());
        return DiffOperator<To>(std::move(v));
    }

private:
    std::vector<Polynomial<Scalar>> coeffs_;
};

/// Degree profile alpha_j = d_j - j. Zero coefficient polynomials carry no
/// profile entry and are excluded from the max.
struct AlphaProfile {
    std::vector<std::optional<int>> alphas;  // indexed by j = 0..n
    int alpha = 0;                           // max over nonzero p_j
};

template <class Scalar>
AlphaProfile alpha_profile(const DiffOperator<Scalar>& op) {
    AlphaProfile profile;
    profile.alpha = op.coeff_degree(op.order()) - op.order();
    for (int j = 0; j <= op.order(); ++j) {
        if (op.coeff(j).is_zero()) {
            profile.alphas.emplace_back(std::nullopt);
            continue;
        }
        int aj = op.coeff_degree(j) - j;
        profile.alphas.emplace_back(aj);
        profile.alpha = std::max(profile.alpha, aj);
    }
    return profile;
}

/// q_l(k) = sum_j (-1)^j a_{l+j,j} (k+l+j)_j as an exact polynomial in k,
/// for l in [-n, alpha].
template <class Scalar>
Polynomial<Scalar> q_poly(const DiffOperator<Scalar>& op, int ell) {
    const int n = op.order();
    const int alpha = alpha_profile(op).alpha;
    if (ell < -n || ell > alpha) throw RangeError("q_poly: l outside [-n, alpha]");
    Polynomial<Scalar> acc;
    for (int j = 0; j <= n; ++j) {
        Scalar a = op.entry(ell + j, j);
        if (a == Scalar(0)) continue;
        // (k+l+j)_j = product of (k + l + t) for t = 1..j
        Polynomial<Scalar> ff({Scalar(1)});
        for (int t = 1; t <= j; ++t) ff = ff * Polynomial<Scalar>({Scalar(ell + t), Scalar(1)});
        if (j % 2 != 0) a = -a;
        acc = acc + a * ff;
    }
    return acc;
}

/// Largest positive integer zero of the leading recurrence coefficient
/// q_alpha, or 0 when it has none (sentinel; the general bound takes a max
/// with n(p+2)-1 >= 1, so the sentinel never weakens it).
inline long lambda_cap(const DiffOperator<Rat>& op) {
    Polynomial<Rat> qa = q_poly(op, alpha_profile(op).alpha);
    if (qa.is_zero()) throw DegenerateLeadingError("lambda_cap: q_alpha is identically zero");
    std::vector<long> roots = positive_integer_roots(qa);
    return roots.empty() ? 0 : roots.back();
}

/// Behaviour of the operator at infinity.
///
/// `fuchsian` is the spec's degree test alpha_n >= alpha_j for all j < n,
/// with a zero p_j occupying degree slot 0. It is a conservative check: an
/// operator can have a regular singularity at infinity and still fail it
/// (e.g. the pure d^2 operator).
struct InfinityAnalysis {
    bool fuchsian = false;
    Polynomial<Rat> indicial;           // q_{alpha_n}(s-1) in the exponent variable s
    std::vector<long> integer_exponents;  // exact positive integer roots
    std::optional<long> lambda;           // largest positive integer exponent
    std::vector<std::complex<double>> exponent_estimates;  // approximate, all roots
};

inline InfinityAnalysis infinity_analysis(const DiffOperator<Rat>& op) {
    InfinityAnalysis result;
    const int n = op.order();
    const int alpha_n = op.coeff_degree(n) - n;

    result.fuchsian = true;
    for (int j = 0; j < n; ++j) {
        int dj = std::max(op.coeff_degree(j), 0);
        if (alpha_n < dj - j) {
            result.fuchsian = false;
            break;
        }
    }

    result.indicial = q_poly(op, alpha_n).taylor_shift(Rat(-1));
    if (!result.indicial.is_zero()) {
        result.integer_exponents = positive_integer_roots(result.indicial);
        if (!result.integer_exponents.empty()) result.lambda = result.integer_exponents.back();
        if (result.indicial.degree() >= 1)
            result.exponent_estimates = polynomial_roots(result.indicial.convert<double>());
    }
    return result;
}

}  // namespace pdmom
