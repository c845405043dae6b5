#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pdmom/powersum.hpp"

using namespace pdmom;

namespace {

PowerSumModel<Rat> geometric_model() {
    // s_k = 2^k - 1 on nodes {1, 2}.
    return {{Rat(1), Rat(2)}, 1, {{Rat(-1)}, {Rat(1)}}};
}

PowerSumModel<Rat> confluent_model() {
    // s_k = k 2^(k-1) on the single node 2 with multiplicity 2.
    return {{Rat(2)}, 2, {{Rat(0), Rat(1)}}};
}

PowerSumModel<Rat> random_model(std::mt19937_64& rng, int max_n = 3, int max_p = 3) {
    PowerSumModel<Rat> model;
    model.order = 1 + static_cast<int>(rng() % max_n);
    const int p = static_cast<int>(rng() % (max_p + 1));
    Rat x(static_cast<long>(rng() % 5) - 4);
    for (int j = 0; j < p + 2; ++j) {
        model.nodes.push_back(x);
        x += Rat(static_cast<long>(rng() % 4) + 1) / Rat(2);
        std::vector<Rat> row;
        for (int l = 0; l < model.order; ++l)
            row.push_back(Rat(static_cast<long>(rng() % 11) - 5) / Rat(static_cast<long>(rng() % 3) + 1));
        model.coeffs.push_back(row);
    }
    return model;
}

}  // namespace

TEST_CASE("eval: geometric difference") {
    PowerSumModel<Rat> m = geometric_model();
    CHECK(m.eval(0) == Rat(0));
    CHECK(m.eval(3) == Rat(7));
    CHECK(m.eval(10) == Rat(1023));
}

TEST_CASE("eval: confluent term") {
    PowerSumModel<Rat> m = confluent_model();
    CHECK(m.eval(0) == Rat(0));
    CHECK(m.eval(1) == Rat(1));
    CHECK(m.eval(2) == Rat(4));
    CHECK(m.eval(5) == Rat(80));
}

TEST_CASE("eval: node at zero uses the limit convention") {
    // s_k = (k)_1 0^(k-1): contributes 1 at k = 1 only.
    PowerSumModel<Rat> m{{Rat(0)}, 2, {{Rat(0), Rat(1)}}};
    CHECK(m.eval(0) == Rat(0));
    CHECK(m.eval(1) == Rat(1));
    CHECK(m.eval(2) == Rat(0));
    CHECK(m.eval(7) == Rat(0));
}

TEST_CASE("validation rejects repeated nodes and ragged rows") {
    PowerSumModel<Rat> bad{{Rat(1), Rat(1)}, 1, {{Rat(1)}, {Rat(2)}}};
    CHECK_THROWS_AS(bad.validate(), RangeError);
}

TEST_CASE("char recurrence: distinct nodes") {
    CHECK(char_recurrence(geometric_model()) == RatPoly({Rat(2), Rat(-3), Rat(1)}));
}

TEST_CASE("char recurrence: confluent node") {
    PowerSumModel<Rat> m = confluent_model();
    CHECK(char_recurrence(m) == RatPoly({Rat(4), Rat(-4), Rat(1)}));
    // s_{k+2} = 4 s_{k+1} - 4 s_k: 4*1 - 4*0 = 4 = s_2
    CHECK(Rat(4) * m.eval(1) - Rat(4) * m.eval(0) == m.eval(2));
}

TEST_CASE("char recurrence: node at zero") {
    PowerSumModel<Rat> m{{Rat(0), Rat(1)}, 1, {{Rat(1)}, {Rat(1)}}};
    CHECK(char_recurrence(m) == RatPoly({Rat(0), Rat(-1), Rat(1)}));
}

TEST_CASE("char recurrence annihilates the sequence exactly") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        PowerSumModel<Rat> m = random_model(rng);
        RatPoly rec = char_recurrence(m);
        for (long k = 0; k <= 20; ++k) {
            Rat acc(0);
            for (int t = 0; t <= rec.degree(); ++t) acc += rec.coeff(t) * m.eval(k + t);
            CHECK(acc == Rat(0));
        }
    }
}

TEST_CASE("nonzero models have at most n(p+2)-1 leading zeros") {
    std::mt19937_64 rng(67);
    int checked = 0;
    while (checked < 200) {
        PowerSumModel<Rat> m = random_model(rng);
        if (m.is_zero_model()) continue;
        const long bound = static_cast<long>(m.order) * (m.p() + 2) - 1;
        long zeros = 0;
        while (zeros <= bound && m.eval(zeros) == Rat(0)) ++zeros;
        CHECK(zeros <= bound);
        ++checked;
    }
}

TEST_CASE("solve_coeffs: 2x2 distinct-node system") {
    PowerSumModel<Rat> m = solve_coeffs<Rat>({Rat(1), Rat(2)}, 1, {Rat(0), Rat(1)});
    CHECK(m.coeffs[0][0] == Rat(-1));
    CHECK(m.coeffs[1][0] == Rat(1));
    for (long k = 0; k <= 6; ++k) CHECK(m.eval(k) == geometric_model().eval(k));
}

TEST_CASE("solve_coeffs: all-zero samples give the zero model") {
    PowerSumModel<Rat> m = solve_coeffs<Rat>({Rat(0), Rat(1, 2), Rat(3)}, 2,
                                             std::vector<Rat>(6, Rat(0)));
    CHECK(m.is_zero_model());
}

TEST_CASE("solve_coeffs: confluent 2x2") {
    PowerSumModel<Rat> m = solve_coeffs<Rat>({Rat(2)}, 2, {Rat(0), Rat(1)});
    CHECK(m.coeffs[0][0] == Rat(0));
    CHECK(m.coeffs[0][1] == Rat(1));
}

TEST_CASE("solve_coeffs guards") {
    CHECK_THROWS_AS(solve_coeffs<Rat>({Rat(1), Rat(1)}, 1, {Rat(0), Rat(1)}), SingularSystemError);
    CHECK_THROWS_AS(solve_coeffs<Rat>({Rat(1), Rat(2)}, 1, {Rat(0)}), RangeError);
}

TEST_CASE("solve_coeffs inverts eval on random models") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 60; ++trial) {
        PowerSumModel<Rat> m = random_model(rng);
        std::vector<Rat> samples;
        for (long k = 0; k < static_cast<long>(m.nodes.size()) * m.order; ++k) samples.push_back(m.eval(k));
        PowerSumModel<Rat> back = solve_coeffs(m.nodes, m.order, samples);
        CHECK(back.coeffs == m.coeffs);
    }
}

TEST_CASE("generating function of the geometric model") {
    RationalFunction<Rat> g = generating_function(geometric_model());
    REQUIRE(g.terms().size() == 2);
    CHECK(g.terms()[0].pole == Rat(1));
    CHECK(g.terms()[0].weights == std::vector<Rat>{Rat(-1)});
    CHECK(g.terms()[1].pole == Rat(2));
    CHECK(g.terms()[1].weights == std::vector<Rat>{Rat(1)});
}

TEST_CASE("generating function of the confluent model matches its series") {
    PowerSumModel<Rat> m = confluent_model();
    RationalFunction<Rat> g = generating_function(m);
    for (long k = 0; k < 10; ++k) CHECK(g.series_coefficient(k) == m.eval(k));
}

TEST_CASE("zero model gives the zero function") {
    PowerSumModel<Rat> zero{{Rat(1), Rat(2)}, 1, {{Rat(0)}, {Rat(0)}}};
    CHECK(generating_function(zero).is_zero());
    CHECK(generating_function(zero).series_coefficient(5) == Rat(0));
}

TEST_CASE("series consistency on random models") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 40; ++trial) {
        PowerSumModel<Rat> m = random_model(rng);
        RationalFunction<Rat> g = generating_function(m);
        LaurentTail<Rat> tail = g.laurent(20);
        for (long k = 0; k < 20; ++k) CHECK(tail.coeff(static_cast<int>(k) + 1) == m.eval(k));
    }
}

TEST_CASE("recover_nodes from exact geometric samples") {
    std::vector<double> samples;
    for (long k = 0; k < 8; ++k) samples.push_back(std::pow(2.0, double(k)) - 1.0);
    NodeRecoveryResult r = recover_nodes(samples, 1, 0);
    REQUIRE(r.nodes.size() == 2);
    CHECK(std::abs(r.nodes[0] - 1.0) < 1e-10);
    CHECK(std::abs(r.nodes[1] - 2.0) < 1e-10);
    CHECK(r.p == 0);
}

TEST_CASE("recover_nodes from the unit-step epsilon sequence") {
    // eps_k = 0^k - 1 for f = 1 on [0,1] under d/dx.
    std::vector<double> samples{0.0};
    for (int k = 1; k < 10; ++k) samples.push_back(-1.0);
    NodeRecoveryResult r = recover_nodes(samples, 1, 0);
    REQUIRE(r.nodes.size() == 2);
    CHECK(std::abs(r.nodes[0] - 0.0) < 1e-10);
    CHECK(std::abs(r.nodes[1] - 1.0) < 1e-10);
}

TEST_CASE("recover_nodes detects a smaller true model order") {
    // Single-node model s_k = 3^k sampled with p_max = 1 head-room.
    std::vector<double> samples;
    for (long k = 0; k < 12; ++k) samples.push_back(std::pow(3.0, double(k)));
    CHECK_THROWS_AS(recover_nodes(samples, 1, 1), WrongModelOrderError);
    // p+2 = 1 is not a valid jump count, so the result is an order error;
    // a genuine two-node model at the same head-room succeeds.
    std::vector<double> two;
    for (long k = 0; k < 12; ++k) two.push_back(std::pow(3.0, double(k)) + std::pow(0.5, double(k)));
    NodeRecoveryResult r = recover_nodes(two, 1, 1);
    REQUIRE(r.nodes.size() == 2);
    CHECK(r.p == 0);
    CHECK(std::abs(r.nodes[0] - 0.5) < 1e-9);
    CHECK(std::abs(r.nodes[1] - 3.0) < 1e-9);
}

TEST_CASE("recover_nodes rejects all-zero samples") {
    std::vector<double> zeros(12, 0.0);
    CHECK_THROWS_AS(recover_nodes(zeros, 1, 1), WrongModelOrderError);
}

TEST_CASE("recover_nodes recovers confluent nodes") {
    // s_k = (2+k) 2^k + (-1)^k: node 2 carries full multiplicity 2, node -1
    // only multiplicity 1 (its top coefficient is zero).
    PowerSumModel<double> m{{2.0, -1.0}, 2, {{2.0, 2.0}, {1.0, 0.0}}};
    std::vector<double> samples;
    for (long k = 0; k < 16; ++k) samples.push_back(m.eval(k));
    NodeRecoveryResult r = recover_nodes(samples, 2, 0);
    REQUIRE(r.nodes.size() == 2);
    CHECK(std::abs(r.nodes[0] + 1.0) < 1e-7);
    CHECK(std::abs(r.nodes[1] - 2.0) < 1e-7);
}
