#include <cmath>
#include <cstddef>
#include <vector>

#include "core/error.hpp"
#include "core/numeric.hpp"
#include "core/rng.hpp"
#include "doctest.h"

using namespace zsl;

namespace {

double max_abs_diff(const Vector& a, const Vector& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.uniform(-2.0, 2.0);
    return m;
}

}  // namespace

TEST_CASE("matrix storage is row-major with spans over rows") {
    Matrix m(2, 3);
    m(0, 0) = 1.0;
    m(0, 2) = 3.0;
    m(1, 1) = 5.0;
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.data() == std::vector<double>{1.0, 0.0, 3.0, 0.0, 5.0, 0.0});
    CHECK(m.row(1)[1] == 5.0);

    const Matrix a = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    const Matrix b = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(a == b);
    CHECK_THROWS_AS(Matrix::from_rows({{1.0}, {2.0, 3.0}}), Error);
}

TEST_CASE("dot product matches a hand-computed value and checks lengths") {
    const Vector a{1.0, -2.0, 3.0};
    const Vector b{4.0, 0.5, -1.0};
    CHECK(dot(a, b) == 4.0 - 1.0 - 3.0);
    const Vector short_vec{1.0};
    CHECK_THROWS_AS(dot(a, short_vec), Error);
}

TEST_CASE("matmul matches a hand-computed product") {
    const Matrix a = Matrix::from_rows({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
    const Matrix b = Matrix::from_rows({{7.0, 8.0}, {9.0, 10.0}, {11.0, 12.0}});
    const Matrix expected = Matrix::from_rows({{58.0, 64.0}, {139.0, 154.0}});
    CHECK(matmul(a, b) == expected);
    CHECK_THROWS_AS(matmul(a, a), Error);
}

TEST_CASE("matmul is associative on random triples") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix a = random_matrix(8, 8, rng);
        const Matrix b = random_matrix(8, 8, rng);
        const Matrix c = random_matrix(8, 8, rng);
        const Matrix left = matmul(matmul(a, b), c);
        const Matrix right = matmul(a, matmul(b, c));
        for (std::size_t i = 0; i < left.data().size(); ++i) {
            const double scale = std::max(1.0, std::fabs(left.data()[i]));
            CHECK(std::fabs(left.data()[i] - right.data()[i]) / scale < 1e-9);
        }
    }
}

TEST_CASE("matvec and its transpose match explicit loops") {
    Rng rng(32);
    const Matrix a = random_matrix(4, 6, rng);
    Vector x(6), y(4);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    for (double& v : y) v = rng.uniform(-1.0, 1.0);

    const Vector ax = matvec(a, x);
    const Vector aty = matvec_transposed(a, y);
    for (std::size_t i = 0; i < 4; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 6; ++j) s += a(i, j) * x[j];
        CHECK(ax[i] == doctest::Approx(s).epsilon(1e-14));
    }
    for (std::size_t j = 0; j < 6; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) s += a(i, j) * y[i];
        CHECK(aty[j] == doctest::Approx(s).epsilon(1e-14));
    }
    CHECK_THROWS_AS(matvec(a, y), Error);
    CHECK_THROWS_AS(matvec_transposed(a, x), Error);
}

TEST_CASE("softmax of equal inputs is uniform") {
    const Vector p = softmax(Vector{3.5, 3.5, 3.5, 3.5});
    for (double v : p) CHECK(v == 0.25);
}

TEST_CASE("softmax matches direct evaluation") {
    // softmax([0, ln 3]) = [1/4, 3/4]
    const Vector p = softmax(Vector{0.0, std::log(3.0)});
    CHECK(p[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-14));

    const Vector q = softmax(Vector{1.0, 0.0});
    CHECK(q[0] == doctest::Approx(0.7310585786300049).epsilon(1e-14));
    CHECK(q[1] == doctest::Approx(0.2689414213699951).epsilon(1e-14));
}

TEST_CASE("softmax shift invariance is bit-exact") {
    // Dyadic inputs and power-of-two shifts keep every intermediate exact, so
    // max-subtraction must give identical outputs, not merely close ones.
    const Vector v{0.5, -1.25, 2.0};
    for (double shift : {1024.0, std::ldexp(1.0, 40), -512.0}) {
        Vector shifted = v;
        for (double& x : shifted) x += shift;
        const Vector a = softmax(v);
        const Vector b = softmax(shifted);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("softmax survives huge magnitudes") {
    const Vector p = softmax(Vector{1e308, 0.0, -1e308});
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
    CHECK(p[2] == 0.0);
}

TEST_CASE("softmax sums to one for random inputs") {
    Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        Vector v(1 + rng.index(8));
        for (double& x : v) x = rng.uniform(-50.0, 50.0);
        const Vector p = softmax(v);
        double sum = 0.0;
        for (double x : p) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("softmax temperature scales like dividing the inputs") {
    const Vector v{0.3, -1.2, 0.9, 0.0};
    for (double tau : {0.25, 0.5, 2.0, 10.0}) {
        Vector scaled = v;
        for (double& x : scaled) x /= tau;
        CHECK(max_abs_diff(softmax(v, tau), softmax(scaled)) < 1e-15);
    }
}

TEST_CASE("softmax keeps the argmax for any positive temperature") {
    const Vector v{0.1, 2.0, -3.0, 1.9};
    for (double tau : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const Vector p = softmax(v, tau);
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.size(); ++i)
            if (p[i] > p[best]) best = i;
        CHECK(best == 1);
    }
}

TEST_CASE("softmax rejects bad inputs") {
    CHECK_THROWS_AS(softmax(Vector{}), Error);
    CHECK_THROWS_AS(softmax(Vector{1.0}, 0.0), Error);
    CHECK_THROWS_AS(softmax(Vector{1.0}, -1.0), Error);
    CHECK_THROWS_AS(softmax(Vector{1.0, std::nan("")}), Error);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(softmax(Vector{inf, 0.0}), Error);
}

TEST_CASE("activation names round-trip and aliases parse") {
    for (Activation a : {Activation::tanh, Activation::sigmoid, Activation::hard_sigmoid, Activation::relu})
        CHECK(activation_from_name(to_string(a)) == a);
    CHECK(activation_from_name("hard_sigmoid") == Activation::hard_sigmoid);
    CHECK(activation_from_name("hard-sigmoid") == Activation::hard_sigmoid);
    CHECK_THROWS_AS(activation_from_name("softplus"), Error);
    CHECK_THROWS_AS(activation_from_name(""), Error);
}

TEST_CASE("activation values at reference points") {
    CHECK(activate(Activation::tanh, 0.0) == 0.0);
    CHECK(activate(Activation::sigmoid, 0.0) == 0.5);
    CHECK(activate(Activation::relu, -1.0) == 0.0);
    CHECK(activate(Activation::relu, 0.0) == 0.0);
    CHECK(activate(Activation::relu, 2.5) == 2.5);

    // hard-sigmoid = clip(0.2 x + 0.5, 0, 1)
    CHECK(activate(Activation::hard_sigmoid, -3.0) == 0.0);
    CHECK(activate(Activation::hard_sigmoid, -2.5) == 0.0);
    CHECK(activate(Activation::hard_sigmoid, 0.0) == 0.5);
    CHECK(activate(Activation::hard_sigmoid, 1.0) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(activate(Activation::hard_sigmoid, 2.5) == 1.0);
    CHECK(activate(Activation::hard_sigmoid, 4.0) == 1.0);
}

TEST_CASE("activation gradients use the stated kink conventions") {
    CHECK(activate_grad(Activation::relu, 0.0) == 0.0);
    CHECK(activate_grad(Activation::relu, -1e-9) == 0.0);
    CHECK(activate_grad(Activation::relu, 1e-9) == 1.0);
    CHECK(activate_grad(Activation::hard_sigmoid, -2.5) == 0.0);
    CHECK(activate_grad(Activation::hard_sigmoid, 2.5) == 0.0);
    CHECK(activate_grad(Activation::hard_sigmoid, 0.0) == 0.2);
    CHECK(activate_grad(Activation::hard_sigmoid, 2.4999) == 0.2);
    CHECK(activate_grad(Activation::hard_sigmoid, 2.5001) == 0.0);
    CHECK(activate_grad(Activation::tanh, 0.0) == 1.0);
    CHECK(activate_grad(Activation::sigmoid, 0.0) == 0.25);
}

TEST_CASE("activation gradients match central differences away from kinks") {
    const double h = 1e-6;
    Rng rng(34);
    for (Activation a : {Activation::tanh, Activation::sigmoid, Activation::hard_sigmoid, Activation::relu}) {
        int checked = 0;
        while (checked < 50) {
            const double x = rng.uniform(-4.0, 4.0);
            // stay clear of the non-differentiable points
            if (a == Activation::relu && std::fabs(x) < 1e-3) continue;
            if (a == Activation::hard_sigmoid && (std::fabs(x - 2.5) < 1e-3 || std::fabs(x + 2.5) < 1e-3)) continue;
            const double numeric = (activate(a, x + h) - activate(a, x - h)) / (2.0 * h);
            CHECK(std::fabs(activate_grad(a, x) - numeric) < 1e-6);
            ++checked;
        }
    }
}

TEST_CASE("vector activation forms match the scalar ones") {
    const Vector x{-2.0, -0.5, 0.0, 0.5, 3.0};
    for (Activation a : {Activation::tanh, Activation::sigmoid, Activation::hard_sigmoid, Activation::relu}) {
        const Vector v = activate(a, x);
        const Vector g = activate_grad(a, x);
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(v[i] == activate(a, x[i]));
            CHECK(g[i] == activate_grad(a, x[i]));
        }
    }
}
