#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pdmom/bounds.hpp"
#include "pdmom/reconstruct.hpp"

using namespace pdmom;

namespace {

const DiffOperator<Rat> kDeriv({RatPoly(), RatPoly({Rat(1)})});
const DiffOperator<Rat> kDeriv2({RatPoly(), RatPoly(), RatPoly({Rat(1)})});

MomentSequence<double> unit_step_moments(long K) {
    std::vector<double> m;
    for (long k = 0; k <= K; ++k) m.push_back(1.0 / double(k + 1));
    return MomentSequence<double>(std::move(m));
}

std::vector<double> uniform_grid(double a, double b, int points) {
    std::vector<double> g;
    for (int i = 0; i < points; ++i) g.push_back(a + (b - a) * double(i) / double(points - 1));
    return g;
}

/// True nodes of a spec that carry a nonzero jump vector.
std::vector<double> effective_nodes(const PiecewiseSpec<Rat>& spec, int n) {
    JumpData<Rat> j = jump_data(spec, n);
    std::vector<double> nodes;
    for (size_t t = 0; t < j.nodes.size(); ++t)
        for (const Rat& d : j.jumps[t])
            if (d != 0) {
                nodes.push_back(to_double(j.nodes[t]));
                break;
            }
    return nodes;
}

}  // namespace

TEST_CASE("required moment count") {
    CHECK(required_moment_count(kDeriv, 0) == 4);   // alpha = -1: 2n(p+2) = 4
    CHECK(required_moment_count(kDeriv2, 1) == 12);
    DiffOperator<Rat> x3d({RatPoly(), RatPoly({Rat(0), Rat(0), Rat(0), Rat(1)})});  // alpha = 2
    CHECK(required_moment_count(x3d, 0) == 6);
}

TEST_CASE("recover jumps of the unit step") {
    JumpEstimate est = recover_jumps(kDeriv, unit_step_moments(6), 0);
    REQUIRE(est.jumps.nodes.size() == 2);
    CHECK(std::abs(est.jumps.nodes[0] - 0.0) < 1e-10);
    CHECK(std::abs(est.jumps.nodes[1] - 1.0) < 1e-10);
    CHECK(std::abs(est.jumps.jumps[0][0] - 1.0) < 1e-10);
    CHECK(std::abs(est.jumps.jumps[1][0] + 1.0) < 1e-10);
}

TEST_CASE("recover jumps of a two-piece broken line under d^2") {
    // f = 1 on [0,1/2), x - 1/2 on [1/2,1].
    PiecewiseSpec<Rat> spec;
    spec.breakpoints = {Rat(0), Rat(1, 2), Rat(1)};
    spec.pieces.push_back(PiecewiseSpec<Rat>::Piece::from_poly(RatPoly({Rat(1)})));
    spec.pieces.push_back(PiecewiseSpec<Rat>::Piece::from_poly(RatPoly({Rat(-1, 2), Rat(1)})));
    MomentSequence<double> m =
        exact_moments(spec, required_moment_count(kDeriv2, 1) - 1).convert<double>();

    JumpEstimate est = recover_jumps(kDeriv2, m, 1);
    REQUIRE(est.jumps.nodes.size() == 3);
    CHECK(std::abs(est.jumps.nodes[0] - 0.0) < 1e-8);
    CHECK(std::abs(est.jumps.nodes[1] - 0.5) < 1e-8);
    CHECK(std::abs(est.jumps.nodes[2] - 1.0) < 1e-8);

    JumpData<Rat> truth = jump_data(spec, 2);
    for (size_t j = 0; j < 3; ++j)
        for (int i = 0; i < 2; ++i)
            CHECK(std::abs(est.jumps.jumps[j][i] - to_double(truth.jumps[j][i])) < 1e-6);
}

TEST_CASE("recover jumps rejects a continuous signal") {
    // P_3 under Op_3 has epsilon identically zero: no nonzero power-sum model.
    PiecewiseSpec<Rat> spec;
    spec.breakpoints = {Rat(-1), Rat(1)};
    spec.pieces.push_back(PiecewiseSpec<Rat>::Piece::from_poly(legendre_polynomial(3)));
    MomentSequence<double> m = exact_moments(spec, 20).convert<double>();
    CHECK_THROWS_AS(recover_jumps(legendre_operator(3), m, 0), WrongModelOrderError);
}

TEST_CASE("recover jumps validates the moment budget") {
    CHECK_THROWS_AS(recover_jumps(kDeriv2, unit_step_moments(5), 1), InsufficientMomentsError);
}

TEST_CASE("rebuild the unit step") {
    JumpData<double> jumps{{0.0, 1.0}, {{1.0}, {-1.0}}};
    std::vector<double> samples = rebuild_signal(kDeriv, jumps, uniform_grid(0.0, 1.0, 21));
    for (double s : samples) CHECK(std::abs(s - 1.0) < 1e-12);
}

TEST_CASE("rebuild zero first piece from a zero jump vector") {
    JumpData<double> jumps{{0.0, 1.0, 2.0}, {{0.0}, {1.0}, {-1.0}}};
    std::vector<double> samples = rebuild_signal(kDeriv, jumps, {0.25, 0.75, 1.5});
    CHECK(samples[0] == 0.0);
    CHECK(samples[1] == 0.0);
    CHECK(std::abs(samples[2] - 1.0) < 1e-12);
}

TEST_CASE("rebuild evaluates to zero outside [a,b]") {
    JumpData<double> jumps{{0.0, 1.0}, {{1.0}, {-1.0}}};
    std::vector<double> samples = rebuild_signal(kDeriv, jumps, {-0.5, 0.5, 1.5});
    CHECK(samples[0] == 0.0);
    CHECK(std::abs(samples[1] - 1.0) < 1e-12);
    CHECK(samples[2] == 0.0);
}

TEST_CASE("rebuild a corpus piecewise polynomial") {
    PiecewiseSpec<Rat> spec;
    spec.breakpoints = {Rat(0), Rat(1, 2), Rat(1)};
    spec.pieces.push_back(PiecewiseSpec<Rat>::Piece::from_poly(RatPoly({Rat(2), Rat(-1)})));
    spec.pieces.push_back(PiecewiseSpec<Rat>::Piece::from_poly(RatPoly({Rat(-1), Rat(3)})));
    JumpData<Rat> truth = jump_data(spec, 2);
    JumpData<double> jumps;
    for (const Rat& x : truth.nodes) jumps.nodes.push_back(to_double(x));
    for (const auto& d : truth.jumps) {
        std::vector<double> row;
        for (const Rat& v : d) row.push_back(to_double(v));
        jumps.jumps.push_back(row);
    }
    std::vector<double> grid = uniform_grid(0.0, 1.0, 101);
    std::vector<double> samples = rebuild_signal(kDeriv2, jumps, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        const RatPoly& piece = grid[i] < 0.5 ? spec.pieces[0].poly : spec.pieces[1].poly;
        double expected = to_double(piece(parse_rat(scalar_text(grid[i]))));
        CHECK(std::abs(samples[i] - expected) < 1e-9);
    }
}

TEST_CASE("residual report on exact data") {
    JumpEstimate est = recover_jumps(kDeriv, unit_step_moments(8), 0);
    ResidualReport report = residual_report(kDeriv, unit_step_moments(8), est.jumps);
    CHECK(report.max_recurrence_residual < 1e-9);
    REQUIRE(report.max_moment_residual.has_value());
    CHECK(*report.max_moment_residual < 1e-9);
}

TEST_CASE("residual report against the exact truth is clean") {
    JumpData<double> truth{{0.0, 1.0}, {{1.0}, {-1.0}}};
    ResidualReport report = residual_report(kDeriv, unit_step_moments(10), truth);
    CHECK(report.max_recurrence_residual < 1e-14);
}

TEST_CASE("small moment noise is not catastrophically amplified") {
    std::mt19937_64 rng(83);
    std::vector<double> noisy = unit_step_moments(8).values();
    for (double& v : noisy) v += 1e-9 * (double(rng() % 1000) / 500.0 - 1.0);
    ReconstructConfig cfg;
    cfg.recovery.fit_rtol = 1e-5;
    cfg.recovery.rank_rtol = 1e-7;
    JumpEstimate est = recover_jumps(kDeriv, MomentSequence<double>(noisy), 0, cfg);
    CHECK(std::abs(est.jumps.nodes[0] - 0.0) < 1e-6);
    CHECK(std::abs(est.jumps.nodes[1] - 1.0) < 1e-6);
    ResidualReport report = residual_report(kDeriv, MomentSequence<double>(noisy), est.jumps);
    CHECK(report.max_recurrence_residual < 1e-6);
}

TEST_CASE("end-to-end on eligible corpus signals") {
    int exercised = 0;
    for (const CorpusSignal& signal : corpus_signals()) {
        const int n = signal.op.order();
        const int p = signal.p();
        if (p > 3) continue;

        // Eligibility per the reconstruction contract: regular nodes, clear
        // separation, p_n root-free on [a,b].
        const Rat a = signal.spec.breakpoints.front();
        const Rat b = signal.spec.breakpoints.back();
        const RatPoly& pn = signal.op.coeff(n);
        if (pn(a) == 0 || pn(b) == 0 || count_real_roots_in(pn, a, b) > 0) continue;
        bool separated = true;
        for (size_t t = 0; t + 1 < signal.spec.breakpoints.size(); ++t)
            if (to_double(signal.spec.breakpoints[t + 1]) - to_double(signal.spec.breakpoints[t]) < 0.2)
                separated = false;
        if (!separated) continue;

        std::vector<double> truth_nodes = effective_nodes(signal.spec, n);
        if (truth_nodes.size() < 2) continue;  // too few active jumps to pin an interval

        MomentSequence<double> m =
            exact_moments(signal.spec, required_moment_count(signal.op, p) - 1).convert<double>();
        JumpEstimate est;
        try {
            est = recover_jumps(signal.op, m, p);
        } catch (const IllConditionedError&) {
            continue;  // diagnosed, not wrong
        }

        JumpData<Rat> truth = jump_data(signal.spec, n);
        REQUIRE(est.jumps.nodes.size() == truth_nodes.size());
        for (size_t t = 0; t < truth_nodes.size(); ++t)
            CHECK(std::abs(est.jumps.nodes[t] - truth_nodes[t]) < 1e-8);

        // Jump vectors at the recovered nodes match the truth at those nodes.
        for (size_t t = 0; t < est.jumps.nodes.size(); ++t) {
            size_t src = 0;
            while (to_double(truth.nodes[src]) != truth_nodes[t]) ++src;
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(est.jumps.jumps[t][i] - to_double(truth.jumps[src][i])) < 1e-6);
        }
        ++exercised;
    }
    CHECK(exercised >= 8);
}
