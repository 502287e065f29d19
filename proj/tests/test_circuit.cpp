#include <random>

#include "doctest.h"
#include "tiqca/circuit.hpp"

using namespace tiqca;

namespace {

const Mat2 kId{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
const Mat2 kX{cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
const Mat2 kIX{cplx{0, 0}, cplx{0, 1}, cplx{0, 1}, cplx{0, 0}};
const Mat2 kH{cplx{M_SQRT1_2, 0}, cplx{M_SQRT1_2, 0}, cplx{M_SQRT1_2, 0}, cplx{-M_SQRT1_2, 0}};

double mat_dist(const Mat2& a, const Mat2& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

Mat2 euler_product(const std::array<double, 3>& abc) {
    return mat2_mul(rx_matrix(abc[0]), mat2_mul(ry_matrix(abc[1]), rx_matrix(abc[2])));
}

Mat2 random_su2(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    cplx a{g(rng), g(rng)}, b{g(rng), g(rng)};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    return {a, -std::conj(b), b, std::conj(a)};  // det = |a|^2 + |b|^2 = 1
}

}  // namespace

TEST_CASE("euler angles of the identity") {
    auto abc = euler_angles(kId);
    CHECK(abc == std::array<double, 3>{0.0, 0.0, 0.0});
}

TEST_CASE("euler angles of i sigma_x") {
    auto abc = euler_angles(kIX);
    CHECK(std::abs(abc[0] - M_PI_2) < 1e-12);
    CHECK(abc[1] == 0.0);
    CHECK(abc[2] == 0.0);
    CHECK(mat_dist(euler_product(abc), kIX) < 1e-12);
}

TEST_CASE("euler angles reconstruct the special-unitarized Hadamard") {
    Mat2 ih = kH;
    for (auto& c : ih) c *= cplx{0, 1};  // det(iH) = 1
    auto abc = euler_angles(ih);
    CHECK(mat_dist(euler_product(abc), ih) < 1e-10);
}

TEST_CASE("euler angles over random special unitaries") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        Mat2 g = random_su2(rng);
        auto abc = euler_angles(g);
        for (double a : abc) {
            CHECK(a > -M_PI - 1e-12);
            CHECK(a <= M_PI + 1e-12);
        }
        CHECK(mat_dist(euler_product(abc), g) < 1e-10);
    }
}

TEST_CASE("euler angle rejections") {
    Mat2 scaled = kId;
    scaled[0] = 2.0;
    CHECK_THROWS_AS(euler_angles(scaled), Error);
    try {
        euler_angles(kX);  // unitary but det = -1
        FAIL("expected NotSpecialUnitary");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSpecialUnitary);
    }
}

TEST_CASE("circuit validation") {
    LogicalCircuit c;
    c.n = 2;
    c.ops = {MeasureGate{1}, CnotGate{1, 2}};
    CHECK_THROWS_AS(c.validate(), Error);
    c.ops = {CnotGate{1, 1}};
    CHECK_THROWS_AS(c.validate(), Error);
    c.ops = {Gate1{3, kX}};
    CHECK_THROWS_AS(c.validate(), Error);
    Mat2 not_unitary = kX;
    not_unitary[1] = 0.5;
    c.ops = {Gate1{1, not_unitary}};
    CHECK_THROWS_AS(c.validate(), Error);
    c.ops = {Gate1{1, kX}, CnotGate{1, 2}, MeasureGate{2}};
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("reference simulation basics") {
    LogicalCircuit empty;
    empty.n = 3;
    ReferenceResult r = reference_simulate(empty);
    CHECK(r.amplitudes[0] == cplx{1, 0});
    CHECK(!r.measured);

    LogicalCircuit flip;
    flip.n = 2;
    flip.ops = {Gate1{1, kX}};
    r = reference_simulate(flip);
    CHECK(std::abs(r.amplitudes[2] - cplx{1, 0}) < 1e-15);  // |10>

    LogicalCircuit bell;
    bell.n = 2;
    bell.ops = {Gate1{1, kH}, CnotGate{1, 2}, MeasureGate{2}};
    r = reference_simulate(bell);
    CHECK(std::abs(r.amplitudes[0] - cplx{M_SQRT1_2, 0}) < 1e-12);
    CHECK(std::abs(r.amplitudes[3] - cplx{M_SQRT1_2, 0}) < 1e-12);
    CHECK(std::abs(r.p_one - 0.5) < 1e-12);

    LogicalCircuit truth;
    truth.n = 2;
    truth.ops = {Gate1{1, kX}, CnotGate{1, 2}};
    r = reference_simulate(truth);
    CHECK(std::abs(r.amplitudes[3] - cplx{1, 0}) < 1e-15);  // |11>
}

TEST_CASE("circuit text round trip") {
    std::string text =
        "qubits 2\n"
        "# flip then entangle\n"
        "g 1 0 0 1 0 1 0 0 0\n"
        "cx 1 2\n"
        "measure 2\n";
    LogicalCircuit c = parse_circuit(text);
    CHECK(c.n == 2);
    REQUIRE(c.ops.size() == 3);
    CHECK(std::get<Gate1>(c.ops[0]).u == kX);
    CHECK(c.measured_qubit() == 2);
    LogicalCircuit again = parse_circuit(circuit_to_text(c));
    CHECK(circuit_to_text(again) == circuit_to_text(c));

    CHECK_THROWS_AS(parse_circuit("g 1 0 0 1 0 1 0 0 0\n"), Error);  // no qubits line
    CHECK_THROWS_AS(parse_circuit("qubits 2\ncx 1\n"), Error);
    CHECK_THROWS_AS(parse_circuit("qubits 2\ncx 1 3\n"), Error);
    CHECK_THROWS_AS(parse_circuit("qubits 1\nbogus\n"), Error);
}
