#pragma once

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pdmom/concomitant.hpp"
#include "pdmom/errors.hpp"
#include "pdmom/moments.hpp"
#include "pdmom/operator.hpp"
#include "pdmom/polynomial.hpp"
#include "pdmom/rational.hpp"

namespace pdmom {

/// Legendre polynomial P_m from the three-term recurrence
/// (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}, exact coefficients.
inline Polynomial<Rat> legendre_polynomial(int m) {
    if (m < 0) throw RangeError("legendre_polynomial: m >= 0");
    Polynomial<Rat> prev({Rat(1)});
    if (m == 0) return prev;
    Polynomial<Rat> cur({Rat(0), Rat(1)});
    for (int k = 1; k < m; ++k) {
        Polynomial<Rat> next =
            Rat(1, k + 1) * (Rat(2 * k + 1) * Polynomial<Rat>({Rat(0), Rat(1)}) * cur - Rat(k) * prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// (1-x^2) d^2 - 2x d + m(m+1).
inline DiffOperator<Rat> legendre_operator(int m) {
    if (m < 0) throw RangeError("legendre_operator: m >= 0");
    return DiffOperator<Rat>({Polynomial<Rat>({Rat(m) * Rat(m + 1)}), Polynomial<Rat>({Rat(0), Rat(-2)}),
                              Polynomial<Rat>({Rat(1), Rat(0), Rat(-1)})});
}

inline std::pair<DiffOperator<Rat>, Polynomial<Rat>> legendre(int m) {
    return {legendre_operator(m), legendre_polynomial(m)};
}

/// First-order annihilator g d - g' of a nonzero polynomial g.
inline DiffOperator<Rat> annihilator_of_poly(const Polynomial<Rat>& g) {
    if (g.is_zero()) throw ZeroPolynomialError("annihilator_of_poly: zero polynomial");
    return DiffOperator<Rat>({-g.derivative(), g});
}

namespace detail {

template <class Scalar>
Polynomial<Scalar> poly_matrix_det(const std::vector<std::vector<Polynomial<Scalar>>>& m) {
    const size_t n = m.size();
    if (n == 1) return m[0][0];
    Polynomial<Scalar> acc;
    for (size_t r = 0; r < n; ++r) {
        std::vector<std::vector<Polynomial<Scalar>>> minor;
        for (size_t i = 0; i < n; ++i) {
            if (i == r) continue;
            std::vector<Polynomial<Scalar>> row(m[i].begin() + 1, m[i].end());
            minor.push_back(std::move(row));
        }
        Polynomial<Scalar> term = m[r][0] * poly_matrix_det(minor);
        acc = (r % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace detail

/// Operator of order r whose kernel contains span of the given r polynomials:
/// L u = det of the Wronskian-style matrix bordered by (u, u', ..., u^(r)),
/// expanded along the u column. Requires a linearly independent basis.
inline DiffOperator<Rat> wronskian_annihilator(const std::vector<Polynomial<Rat>>& basis) {
    const int r = static_cast<int>(basis.size());
    if (r == 0) throw RangeError("wronskian_annihilator: empty basis");
    std::vector<std::vector<Polynomial<Rat>>> rows(static_cast<size_t>(r) + 1,
                                                   std::vector<Polynomial<Rat>>(static_cast<size_t>(r)));
    for (int c = 0; c < r; ++c) {
        Polynomial<Rat> d = basis[static_cast<size_t>(c)];
        for (int i = 0; i <= r; ++i) {
            rows[static_cast<size_t>(i)][static_cast<size_t>(c)] = d;
            d = d.derivative();
        }
    }
    std::vector<Polynomial<Rat>> coeffs(static_cast<size_t>(r) + 1);
    for (int i = 0; i <= r; ++i) {
        std::vector<std::vector<Polynomial<Rat>>> minor;
        for (int k = 0; k <= r; ++k)
            if (k != i) minor.push_back(rows[static_cast<size_t>(k)]);
        Polynomial<Rat> det = detail::poly_matrix_det(minor);
        coeffs[static_cast<size_t>(i)] = (i % 2 == 0) ? det : -det;
    }
    if (coeffs.back().is_zero())
        throw SingularSystemError("wronskian_annihilator: basis is linearly dependent");
    return DiffOperator<Rat>(std::move(coeffs));
}

/// Piecewise signal description: breakpoints plus per-interval payload,
/// either an explicit polynomial or an initial-condition vector at the
/// interval's left endpoint (propagated under a companion operator).
template <class Scalar>
struct PiecewiseSpec {
    struct Piece {
        enum class Kind { polynomial, initial_conditions };
        Kind kind = Kind::polynomial;
        Polynomial<Scalar> poly;
        std::vector<Scalar> ic;

        static Piece from_poly(Polynomial<Scalar> p) { return {Kind::polynomial, std::move(p), {}}; }
        static Piece from_ic(std::vector<Scalar> v) { return {Kind::initial_conditions, {}, std::move(v)}; }
    };

    std::vector<Scalar> breakpoints;  // xi_0 < ... < xi_{p+1}
    std::vector<Piece> pieces;        // one per interval

    int p() const { return static_cast<int>(breakpoints.size()) - 2; }

    bool all_polynomial() const {
        for (const Piece& piece : pieces)
            if (piece.kind != Piece::Kind::polynomial) return false;
        return true;
    }

    void validate() const {
        if (breakpoints.size() < 2) throw RangeError("PiecewiseSpec: need at least two breakpoints");
        if (pieces.size() + 1 != breakpoints.size())
            throw RangeError("PiecewiseSpec: need one piece per interval");
        for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
            if (!(breakpoints[i] < breakpoints[i + 1]))
                throw RangeError("PiecewiseSpec: breakpoints must be strictly increasing");
    }
};

/// Exact moments m_k = sum over intervals of int x^k piece(x) dx, k = 0..K.
inline MomentSequence<Rat> exact_moments(const PiecewiseSpec<Rat>& spec, long K) {
    spec.validate();
    if (!spec.all_polynomial()) throw NonPolynomialPieceError("exact_moments: explicit polynomial pieces required");
    std::vector<Rat> m;
    m.reserve(static_cast<size_t>(K) + 1);
    for (long k = 0; k <= K; ++k) {
        Rat acc(0);
        for (size_t j = 0; j < spec.pieces.size(); ++j) {
            Polynomial<Rat> integrand = Polynomial<Rat>::monomial(Rat(1), static_cast<int>(k)) * spec.pieces[j].poly;
            acc += integrand.integral(spec.breakpoints[j], spec.breakpoints[j + 1]);
        }
        m.push_back(std::move(acc));
    }
    return MomentSequence<Rat>(std::move(m));
}

/// Jump data of an explicit piecewise polynomial under the usual convention
/// f = 0 outside [a, b]: Delta_j^(i) = one-sided derivative difference at
/// each breakpoint.
template <class Scalar>
JumpData<Scalar> jump_data(const PiecewiseSpec<Scalar>& spec, int n) {
    spec.validate();
    if (!spec.all_polynomial()) throw NonPolynomialPieceError("jump_data: explicit polynomial pieces required");
    JumpData<Scalar> jumps;
    jumps.nodes = spec.breakpoints;
    for (size_t j = 0; j < spec.breakpoints.size(); ++j) {
        std::vector<Scalar> delta;
        for (int i = 0; i < n; ++i) {
            Scalar right = j < spec.pieces.size() ? spec.pieces[j].poly.derivative(i)(spec.breakpoints[j]) : Scalar(0);
            Scalar left = j > 0 ? spec.pieces[j - 1].poly.derivative(i)(spec.breakpoints[j]) : Scalar(0);
            delta.push_back(right - left);
        }
        jumps.jumps.push_back(std::move(delta));
    }
    return jumps;
}

/// Truncated power-series solution of L u = 0 about x0 with initial vector
/// (u(x0), ..., u^(n-1)(x0)), in the local variable y = x - x0. x0 must be an
/// ordinary point of L.
template <class Scalar>
Polynomial<Scalar> series_solution(const DiffOperator<Scalar>& op, const Scalar& x0,
                                   const std::vector<Scalar>& ic, int degree) {
    const int n = op.order();
    if (static_cast<int>(ic.size()) != n) throw RangeError("series_solution: need n initial values");
    std::vector<Polynomial<Scalar>> local;
    for (int j = 0; j <= n; ++j) local.push_back(op.coeff(j).taylor_shift(x0));
    const Scalar lead0 = local.back().coeff(0);
    if (lead0 == Scalar(0)) throw SingularExpansionPointError("series_solution: p_n vanishes at expansion point");

    std::vector<Scalar> b(static_cast<size_t>(degree) + 1, Scalar(0));
    Scalar factorial(1);
    for (int i = 0; i < n && i <= degree; ++i) {
        if (i > 0) factorial *= Scalar(i);
        b[static_cast<size_t>(i)] = ic[static_cast<size_t>(i)] / factorial;
    }
    // Coefficient of y^t in L u: sum_{i,j} a~_{i,j} (t-i+j)_j b_{t-i+j} = 0,
    // solved for b_{t+n} (coefficient a~_{0,n} (t+n)_n).
    for (int t = 0; t + n <= degree; ++t) {
        Scalar acc(0);
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= local[static_cast<size_t>(j)].degree(); ++i) {
                if (i == 0 && j == n) continue;  // the solved-for term
                const int idx = t - i + j;
                if (idx < 0) continue;
                acc += local[static_cast<size_t>(j)].coeff(i) * falling_factorial<Scalar>(idx, j) *
                       b[static_cast<size_t>(idx)];
            }
        }
        b[static_cast<size_t>(t + n)] = -acc / (lead0 * falling_factorial<Scalar>(t + n, n));
    }
    return Polynomial<Scalar>(std::move(b));
}

/// Floating moments of a spec whose pieces are initial-condition vectors,
/// via per-piece truncated series solutions expanded at the interval's left
/// endpoint and exact term-wise integration. Reports a crude a-posteriori
/// estimate from the last retained series term and raises AccuracyNotMet
/// when it exceeds `tol`. Polynomial pieces pass through exactly.
struct SeriesMomentsResult {
    MomentSequence<double> moments;
    double error_estimate = 0.0;
};

inline SeriesMomentsResult series_moments(const DiffOperator<Rat>& op, const PiecewiseSpec<Rat>& spec, long K,
                                          int degree, double tol = 1e-10) {
    spec.validate();
    DiffOperator<double> dop = op.convert<double>();

    // Every expansion interval must be free of roots of p_n.
    for (size_t j = 0; j + 1 < spec.breakpoints.size(); ++j)
        if (count_real_roots_in(op.coeff(op.order()), spec.breakpoints[j], spec.breakpoints[j + 1]) > 0)
            throw SingularExpansionPointError("series_moments: p_n has a root inside interval " + std::to_string(j));

    double estimate = 0.0;
    std::vector<Polynomial<double>> globals;
    for (size_t j = 0; j < spec.pieces.size(); ++j) {
        const auto& piece = spec.pieces[j];
        const double a = to_double(spec.breakpoints[j]);
        const double b = to_double(spec.breakpoints[j + 1]);
        Polynomial<double> global;
        if (piece.kind == PiecewiseSpec<Rat>::Piece::Kind::polynomial) {
            global = piece.poly.convert<double>();
        } else {
            std::vector<double> ic;
            for (const Rat& v : piece.ic) ic.push_back(to_double(v));
            Polynomial<double> local = series_solution(dop, a, ic, degree);
            const double len = b - a;
            estimate += std::abs(local.coeff(degree)) * std::pow(len, degree) * len;
            global = local.taylor_shift(-a);
        }
        globals.push_back(std::move(global));
    }
    if (estimate > tol)
        throw AccuracyNotMetError("series_moments: tail estimate " + std::to_string(estimate) +
                                  " exceeds tolerance; raise the degree budget");

    std::vector<double> m;
    for (long k = 0; k <= K; ++k) {
        double acc = 0.0;
        for (size_t j = 0; j < globals.size(); ++j) {
            Polynomial<double> integrand = Polynomial<double>::monomial(1.0, static_cast<int>(k)) * globals[j];
            acc += integrand.integral(to_double(spec.breakpoints[j]), to_double(spec.breakpoints[j + 1]));
        }
        m.push_back(acc);
    }
    return {MomentSequence<double>(std::move(m)), estimate};
}

/// A ground-truth signal: operator, explicit piecewise-polynomial spec, and
/// a name for reporting. Every piece is annihilated by the operator.
struct CorpusSignal {
    std::string name;
    DiffOperator<Rat> op;
    PiecewiseSpec<Rat> spec;

    int p() const { return spec.p(); }
};

/// Deterministic factory of ground-truth signals: the Legendre family plus
/// piecewise combinations drawn from fixed solution bases of constructed
/// annihilators. Seeded RNG, identical list on every call.
inline std::vector<CorpusSignal> corpus_signals() {
    std::vector<CorpusSignal> out;

    auto make_spec = [](std::vector<Rat> breaks, std::vector<Polynomial<Rat>> polys) {
        PiecewiseSpec<Rat> spec;
        spec.breakpoints = std::move(breaks);
        for (auto& g : polys) spec.pieces.push_back(PiecewiseSpec<Rat>::Piece::from_poly(std::move(g)));
        spec.validate();
        return spec;
    };

    // Legendre P_m on [-1,1] under Op_m; p_n = 1-x^2 vanishes at both nodes,
    // which exercises the Lambda-based bound path.
    for (int m = 0; m <= 10; ++m) {
        auto [op, poly] = legendre(m);
        out.push_back({"legendre_" + std::to_string(m), op, make_spec({Rat(-1), Rat(1)}, {poly})});
    }

    std::mt19937_64 rng(20260314u);
    auto small = [&](int lo, int hi) { return Rat(static_cast<long>(rng() % static_cast<unsigned>(hi - lo + 1)) + lo); };
    auto nonzero_small = [&](int lo, int hi) {
        Rat v;
        do v = small(lo, hi);
        while (v == 0);
        return v;
    };

    // First-order families: pieces are scalar multiples of a fixed g under
    // g d - g'. Includes bases vanishing inside the interval (singular nodes).
    struct FirstOrder {
        const char* name;
        Polynomial<Rat> g;
        std::vector<Rat> breaks;
    };
    const std::vector<FirstOrder> first_order = {
        {"const_1jump", Polynomial<Rat>({Rat(1)}), {Rat(0), Rat(1, 2), Rat(1)}},
        {"const_3jump", Polynomial<Rat>({Rat(1)}), {Rat(-1), Rat(-1, 4), Rat(1, 3), Rat(3, 4), Rat(1)}},
        {"linear", Polynomial<Rat>({Rat(1), Rat(1)}), {Rat(0), Rat(1), Rat(2)}},
        {"quadratic", Polynomial<Rat>({Rat(1), Rat(0), Rat(1)}), {Rat(-1), Rat(0), Rat(1)}},
        {"cubic_sing", Polynomial<Rat>({Rat(0), Rat(-1), Rat(0), Rat(1)}), {Rat(2), Rat(3), Rat(4)}},
        {"legendre2_piece", legendre_polynomial(2), {Rat(-2), Rat(-1), Rat(0), Rat(2)}},
    };
    for (const auto& fo : first_order) {
        for (int variant = 0; variant < 3; ++variant) {
            std::vector<Polynomial<Rat>> pieces;
            for (size_t i = 0; i + 1 < fo.breaks.size(); ++i) pieces.push_back(nonzero_small(-4, 4) * fo.g);
            out.push_back({std::string(fo.name) + "_v" + std::to_string(variant),
                           annihilator_of_poly(fo.g), make_spec(fo.breaks, std::move(pieces))});
        }
    }

    // Higher-order families: pieces are combinations from a fixed basis under
    // the bordered-Wronskian annihilator.
    struct Family {
        const char* name;
        std::vector<Polynomial<Rat>> basis;
        std::vector<Rat> breaks;
    };
    const std::vector<Family> families = {
        {"d2_affine", {Polynomial<Rat>({Rat(1)}), Polynomial<Rat>({Rat(0), Rat(1)})}, {Rat(0), Rat(1, 2), Rat(1)}},
        {"d2_affine_wide",
         {Polynomial<Rat>({Rat(1)}), Polynomial<Rat>({Rat(0), Rat(1)})},
         {Rat(-1), Rat(-1, 2), Rat(1, 4), Rat(1)}},
        {"d3_quadratic",
         {Polynomial<Rat>({Rat(1)}), Polynomial<Rat>({Rat(0), Rat(1)}), Polynomial<Rat>({Rat(0), Rat(0), Rat(1)})},
         {Rat(0), Rat(1), Rat(2)}},
        {"sing_at_zero", {Polynomial<Rat>({Rat(1)}), Polynomial<Rat>({Rat(0), Rat(0), Rat(1)})}, {Rat(-1), Rat(1, 2), Rat(2)}},
        {"legendre_pair", {legendre_polynomial(1), legendre_polynomial(3)}, {Rat(-1), Rat(0), Rat(1)}},
        {"mixed_deg",
         {Polynomial<Rat>({Rat(1), Rat(1)}), Polynomial<Rat>({Rat(-1), Rat(0), Rat(2)})},
         {Rat(0), Rat(2, 3), Rat(3, 2), Rat(2)}},
    };
    for (const auto& family : families) {
        DiffOperator<Rat> op = wronskian_annihilator(family.basis);
        for (int variant = 0; variant < 4; ++variant) {
            std::vector<Polynomial<Rat>> pieces;
            bool any_nonzero = false;
            for (size_t i = 0; i + 1 < family.breaks.size(); ++i) {
                Polynomial<Rat> g;
                for (const auto& basis_poly : family.basis) g = g + small(-3, 3) * basis_poly;
                any_nonzero = any_nonzero || !g.is_zero();
                pieces.push_back(std::move(g));
            }
            if (!any_nonzero) pieces.front() = family.basis.front();  // keep the signal nonzero
            out.push_back({std::string(family.name) + "_v" + std::to_string(variant), op,
                           make_spec(family.breaks, std::move(pieces))});
        }
    }
    return out;
}

}  // namespace pdmom
