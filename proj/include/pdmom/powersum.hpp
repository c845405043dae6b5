#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "pdmom/concomitant.hpp"
#include "pdmom/errors.hpp"
#include "pdmom/linalg.hpp"
#include "pdmom/polynomial.hpp"
#include "pdmom/polyroots.hpp"
#include "pdmom/rational_function.hpp"

namespace pdmom {

/// One basis term (k)_l xi^(k-l). Zero for k < l; a node at 0 contributes
/// only at k = l, where the term is l! (limit convention 0^0 = 1).
template <class Scalar>
Scalar power_sum_term(const Scalar& xi, int l, long k) {
    if (k < l) return Scalar(0);
    if (xi == Scalar(0)) return k == l ? falling_factorial<Scalar>(l, l) : Scalar(0);
    Scalar acc = falling_factorial<Scalar>(k, l);
    for (long t = 0; t < k - l; ++t) acc *= xi;
    return acc;
}

/// Generalized power sum s_k = sum_j sum_l c_{l,j} (k)_l xi_j^(k-l) with
/// pairwise distinct nodes and fixed per-node multiplicity n.
template <class Scalar>
struct PowerSumModel {
    std::vector<Scalar> nodes;                 // xi_0 .. xi_{p+1}
    int order = 1;                             // n
    std::vector<std::vector<Scalar>> coeffs;   // coeffs[j][l], l = 0..n-1

    int p() const { return static_cast<int>(nodes.size()) - 2; }

    void validate() const {
        if (coeffs.size() != nodes.size()) throw RangeError("PowerSumModel: one coefficient row per node");
        for (size_t a = 0; a < nodes.size(); ++a) {
            if (static_cast<int>(coeffs[a].size()) != order)
                throw RangeError("PowerSumModel: coefficient rows must have length n");
            for (size_t b = a + 1; b < nodes.size(); ++b)
                if (nodes[a] == nodes[b]) throw RangeError("PowerSumModel: nodes must be pairwise distinct");
        }
    }

    Scalar eval(long k) const {
        Scalar acc(0);
        for (size_t j = 0; j < nodes.size(); ++j)
            for (int l = 0; l < order; ++l)
                acc += coeffs[j][static_cast<size_t>(l)] * power_sum_term(nodes[j], l, k);
        return acc;
    }

    bool is_zero_model() const {
        for (const auto& row : coeffs)
            for (const Scalar& c : row)
                if (c != Scalar(0)) return false;
        return true;
    }
};

/// The power-sum model of the epsilon sequence of (L, jumps): node
/// coefficients come from the concomitant matrix, c_j = M(L,xi_j) Delta_j.
template <class Scalar>
PowerSumModel<Scalar> power_sum_from_jumps(const DiffOperator<Scalar>& op, const JumpData<Scalar>& jumps) {
    jumps.validate();
    PowerSumModel<Scalar> model;
    model.nodes = jumps.nodes;
    model.order = op.order();
    for (size_t j = 0; j < jumps.nodes.size(); ++j)
        model.coeffs.push_back(jump_to_c(op, jumps.nodes[j]).apply(jumps.jumps[j]));
    return model;
}

/// Monic annihilating polynomial prod_j (z - xi_j)^n of the model; the
/// sequence satisfies sum_t coeff_t s_{k+t} = 0 for every k >= 0 and the
/// coefficient vector has length n(p+2)+1.
template <class Scalar>
Polynomial<Scalar> char_recurrence(const PowerSumModel<Scalar>& model) {
    model.validate();
    Polynomial<Scalar> acc({Scalar(1)});
    for (const Scalar& xi : model.nodes)
        acc = acc * Polynomial<Scalar>({-xi, Scalar(1)}).pow(model.order);
    return acc;
}

/// Recovers the coefficient array from the first n(p+2) samples by solving
/// the confluent Vandermonde system in the basis {(k)_l xi_j^(k-l)}.
template <class Scalar>
PowerSumModel<Scalar> solve_coeffs(const std::vector<Scalar>& nodes, int order,
                                   const std::vector<Scalar>& samples) {
    const size_t m = nodes.size() * static_cast<size_t>(order);
    if (samples.size() != m)
        throw RangeError("solve_coeffs: need exactly n(p+2) samples");
    for (size_t a = 0; a < nodes.size(); ++a)
        for (size_t b = a + 1; b < nodes.size(); ++b)
            if (nodes[a] == nodes[b]) throw SingularSystemError("solve_coeffs: nodes must be pairwise distinct");

    Matrix<Scalar> vand(m, m);
    for (size_t k = 0; k < m; ++k)
        for (size_t j = 0; j < nodes.size(); ++j)
            for (int l = 0; l < order; ++l)
                vand(k, j * static_cast<size_t>(order) + static_cast<size_t>(l)) =
                    power_sum_term(nodes[j], l, static_cast<long>(k));
    std::vector<Scalar> x = solve(vand, samples);

    PowerSumModel<Scalar> model;
    model.nodes = nodes;
    model.order = order;
    for (size_t j = 0; j < nodes.size(); ++j)
        model.coeffs.emplace_back(x.begin() + static_cast<long>(j) * order,
                                  x.begin() + static_cast<long>(j + 1) * order);
    return model;
}

/// Partial-fraction generating function g(z) = sum_k s_k z^(-k-1):
/// each coefficient c_{l,j} contributes l! c_{l,j} / (z - xi_j)^(l+1).
template <class Scalar>
RationalFunction<Scalar> generating_function(const PowerSumModel<Scalar>& model) {
    model.validate();
    std::vector<PoleTerm<Scalar>> terms;
    for (size_t j = 0; j < model.nodes.size(); ++j) {
        PoleTerm<Scalar> term{model.nodes[j], {}};
        for (int l = 0; l < model.order; ++l)
            term.weights.push_back(falling_factorial<Scalar>(l, l) * model.coeffs[j][static_cast<size_t>(l)]);
        terms.push_back(std::move(term));
    }
    return RationalFunction<Scalar>(std::move(terms));
}

struct NodeRecoveryConfig {
    double rank_rtol = 1e-10;     // relative singular-value cutoff for model order
    double cluster_gap_rtol = 1e-6;  // gap threshold relative to root spread
    double condition_limit = 1e12;
    double fit_rtol = 1e-8;       // relative residual limit for the fitted recurrence
};

struct NodeRecoveryResult {
    std::vector<double> nodes;    // p+2 recovered nodes, ascending
    int p = 0;                    // detected number of interior jumps
    double fit_residual = 0.0;    // relative residual of the annihilating fit
    double condition = 0.0;       // condition estimate of the Hankel solve
    std::vector<std::complex<double>> roots;  // raw annihilator roots
};

namespace detail {

struct RootClustering {
    std::vector<std::vector<std::complex<double>>> clusters;
    double quality = 0.0;  // smallest inter-cluster gap / largest intra-cluster diameter
};

/// Splits roots (sorted by real part, then imaginary part) into contiguous
/// clusters. A node of the model appears as a tight clump of up to n roots
/// (an m-fold root splits numerically by ~eps^(1/m)), so a clustering is
/// valid when no clump exceeds n members and clumps are far apart relative
/// to their diameters. Primary rule per configuration: break at gaps larger
/// than gap_rtol * spread; if that is not valid, try every admissible
/// cluster count, breaking at the largest gaps, and keep the best-separated
/// valid split.
inline RootClustering cluster_roots(std::vector<std::complex<double>> roots, int order, int p_max,
                                    const NodeRecoveryConfig& cfg) {
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    const size_t total = roots.size();
    double spread = 0.0;
    for (size_t i = 0; i < total; ++i) spread = std::max(spread, std::abs(roots[total - 1] - roots[i]));
    std::vector<double> gaps(total > 0 ? total - 1 : 0);
    for (size_t i = 0; i + 1 < total; ++i) gaps[i] = std::abs(roots[i + 1] - roots[i]);

    auto build = [&](const std::vector<size_t>& cuts) {
        RootClustering out;
        size_t begin = 0;
        double max_diam = 1e-14 * std::max(spread, 1.0);
        double min_gap = std::numeric_limits<double>::infinity();
        auto flush = [&](size_t end) {  // [begin, end)
            out.clusters.emplace_back(roots.begin() + static_cast<long>(begin),
                                      roots.begin() + static_cast<long>(end));
            for (size_t a = begin; a < end; ++a)
                for (size_t b = a + 1; b < end; ++b)
                    max_diam = std::max(max_diam, std::abs(roots[a] - roots[b]));
            begin = end;
        };
        for (size_t cut : cuts) {
            min_gap = std::min(min_gap, gaps[cut]);
            flush(cut + 1);
        }
        flush(total);
        out.quality = min_gap / max_diam;
        return out;
    };
    auto valid = [&](const RootClustering& rc) {
        if (rc.clusters.size() < 2 || rc.clusters.size() > static_cast<size_t>(p_max) + 2) return false;
        for (const auto& c : rc.clusters)
            if (c.size() > static_cast<size_t>(order)) return false;
        return rc.quality >= 10.0;
    };

    std::vector<size_t> cuts;
    for (size_t i = 0; i < gaps.size(); ++i)
        if (gaps[i] > cfg.cluster_gap_rtol * spread) cuts.push_back(i);
    RootClustering primary = build(cuts);
    if (valid(primary)) return primary;

    // Confluent roots can straddle the primary threshold; rescue by trying
    // each admissible cluster count with cuts at the largest gaps.
    std::vector<size_t> index(gaps.size());
    for (size_t i = 0; i < index.size(); ++i) index[i] = i;
    std::sort(index.begin(), index.end(), [&](size_t a, size_t b) { return gaps[a] > gaps[b]; });
    RootClustering best;
    const size_t lo = (total + static_cast<size_t>(order) - 1) / static_cast<size_t>(order);
    const size_t hi = std::min(total, static_cast<size_t>(p_max) + 2);
    for (size_t count = std::max<size_t>(lo, 2); count <= hi; ++count) {
        cuts.assign(index.begin(), index.begin() + static_cast<long>(count - 1));
        std::sort(cuts.begin(), cuts.end());
        RootClustering candidate = build(cuts);
        if (valid(candidate) && candidate.quality > best.quality) best = candidate;
    }
    if (best.clusters.empty())
        throw WrongModelOrderError("recover_nodes: annihilator roots do not form clusters of multiplicity <= n");
    return best;
}

}  // namespace detail

/// Recovers the nodes of a power-sum model from >= 2n(p_max+2) samples:
/// detects the minimal recurrence length from the numerical rank of the
/// Hankel matrix, fits the monic annihilating recurrence in least squares,
/// and clusters the annihilator roots into the distinct nodes. A node whose
/// top coefficients vanish appears with reduced multiplicity in the minimal
/// recurrence; clusters may therefore hold up to n roots each.
inline NodeRecoveryResult recover_nodes(std::span<const double> samples, int order, int p_max,
                                        const NodeRecoveryConfig& cfg = {}) {
    if (order < 1 || p_max < 0) throw RangeError("recover_nodes: order >= 1 and p_max >= 0 required");
    const long full = static_cast<long>(order) * (p_max + 2);
    const long count = static_cast<long>(samples.size());
    if (count < 2 * full)
        throw RangeError("recover_nodes: need at least 2n(p_max+2) samples");

    double scale = 0.0;
    for (double s : samples) scale = std::max(scale, std::abs(s));
    if (scale == 0.0) throw WrongModelOrderError("recover_nodes: all samples are zero (no nonzero model)");

    // Rescale so the nodes land near the unit disk: s_k / sigma^k is the
    // power sum with nodes xi/sigma. Nodes beyond 1 otherwise make the Hankel
    // columns grow like xi^k and ruin the conditioning. The growth rate is
    // estimated from the ratio of the dominant samples in the two halves,
    // which cancels the coefficient magnitudes.
    double sigma = 1.0;
    {
        long k1 = -1, k2 = -1;
        for (long k = 0; k < count / 2; ++k) {
            double v = std::abs(samples[static_cast<size_t>(k)]);
            if (v > 0.0 && (k1 < 0 || v > std::abs(samples[static_cast<size_t>(k1)]))) k1 = k;
        }
        for (long k = count / 2; k < count; ++k) {
            double v = std::abs(samples[static_cast<size_t>(k)]);
            if (v > 0.0 && (k2 < 0 || v > std::abs(samples[static_cast<size_t>(k2)]))) k2 = k;
        }
        if (k1 >= 0 && k2 > k1) {
            double growth = std::abs(samples[static_cast<size_t>(k2)]) / std::abs(samples[static_cast<size_t>(k1)]);
            sigma = std::max(1.0, std::pow(growth, 1.0 / static_cast<double>(k2 - k1)));
        }
    }
    std::vector<double> scaled(samples.size());
    double power = 1.0;
    for (long k = 0; k < count; ++k, power /= sigma) scaled[static_cast<size_t>(k)] = samples[static_cast<size_t>(k)] * power;
    scale = 0.0;
    for (double s : scaled) scale = std::max(scale, std::abs(s));

    // Numerical rank of the width-(full+1) Hankel matrix = minimal recurrence length.
    Eigen::MatrixXd hankel(count - full, full + 1);
    for (long r = 0; r < count - full; ++r)
        for (long c = 0; c <= full; ++c) hankel(r, c) = scaled[static_cast<size_t>(r + c)];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(hankel);
    const auto& sv = svd.singularValues();
    long rank = 0;
    for (long i = 0; i < sv.size(); ++i)
        if (sv(i) > cfg.rank_rtol * sv(0)) ++rank;

    if (rank == 0) throw WrongModelOrderError("recover_nodes: all samples are zero (no nonzero model)");
    if (rank > full)
        throw WrongModelOrderError("recover_nodes: samples need a longer recurrence than n(p_max+2)");
    const long model_size = rank;

    // Least-squares fit of the minimal monic recurrence of length model_size+1.
    Eigen::MatrixXd lhs(count - model_size, model_size);
    Eigen::VectorXd rhs(count - model_size);
    for (long r = 0; r < count - model_size; ++r) {
        for (long c = 0; c < model_size; ++c) lhs(r, c) = scaled[static_cast<size_t>(r + c)];
        rhs(r) = -scaled[static_cast<size_t>(r + model_size)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> fit(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd coeff = fit.solve(rhs);

    NodeRecoveryResult result;
    result.condition = fit.singularValues()(0) / fit.singularValues()(fit.singularValues().size() - 1);
    if (!std::isfinite(result.condition) || result.condition > cfg.condition_limit)
        throw IllConditionedError("recover_nodes: Hankel system condition estimate " +
                                  std::to_string(result.condition));
    result.fit_residual = (lhs * coeff - rhs).norm() / (rhs.norm() + scale);
    if (result.fit_residual > cfg.fit_rtol)
        throw WrongModelOrderError("recover_nodes: recurrence fit residual " +
                                   std::to_string(result.fit_residual) + " exceeds tolerance");

    std::vector<double> poly(static_cast<size_t>(model_size) + 1);
    for (long i = 0; i < model_size; ++i) poly[static_cast<size_t>(i)] = coeff(i);
    poly.back() = 1.0;
    result.roots = polynomial_roots(Polynomial<double>(std::move(poly)));
    for (auto& z : result.roots) z *= sigma;  // undo the variable scaling

    detail::RootClustering clustering = detail::cluster_roots(result.roots, order, p_max, cfg);
    for (const auto& c : clustering.clusters) {
        std::complex<double> mean(0.0, 0.0);
        for (const auto& z : c) mean += z;
        result.nodes.push_back(mean.real() / static_cast<double>(c.size()));
    }
    std::sort(result.nodes.begin(), result.nodes.end());
    result.p = static_cast<int>(result.nodes.size()) - 2;
    return result;
}

}  // namespace pdmom
