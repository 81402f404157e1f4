#include "core/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace zsl {

namespace {

std::string shape_str(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != m.cols()) fail(ErrorCode::dimension_mismatch, "from_rows: ragged initializer");
        std::size_t c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        fail(ErrorCode::dimension_mismatch,
             "dot: length " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        fail(ErrorCode::dimension_mismatch, "matmul: " + shape_str(a) + " * " + shape_str(b));
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            const auto brow = b.row(k);
            const auto orow = out.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

Vector matvec(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size())
        fail(ErrorCode::dimension_mismatch,
             "matvec: " + shape_str(a) + " * vector of length " + std::to_string(x.size()));
    Vector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
    return out;
}

Vector matvec_transposed(const Matrix& a, std::span<const double> x) {
    if (a.rows() != x.size())
        fail(ErrorCode::dimension_mismatch,
             "matvec_transposed: " + shape_str(a) + "^T * vector of length " + std::to_string(x.size()));
    Vector out(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        const auto arow = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] += xi * arow[j];
    }
    return out;
}

Vector softmax(std::span<const double> v, double tau) {
    if (v.empty()) fail(ErrorCode::invalid_argument, "softmax: empty input");
    if (!(tau > 0.0)) fail(ErrorCode::invalid_argument, "softmax: tau must be > 0");
    for (double x : v)
        if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, "softmax: non-finite input");

    const double m = *std::max_element(v.begin(), v.end());
    Vector out(v.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::exp((v[i] - m) / tau);
        sum += out[i];
    }
    // sum >= 1 always: the max element contributes exp(0).
    for (double& x : out) x /= sum;
    return out;
}

Activation activation_from_name(std::string_view name) {
    if (name == "tanh") return Activation::tanh;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "hard-sigmoid" || name == "hard_sigmoid") return Activation::hard_sigmoid;
    if (name == "relu") return Activation::relu;
    fail(ErrorCode::invalid_argument,
         "unknown activation '" + std::string(name) + "' (expected tanh|sigmoid|hard-sigmoid|relu)");
}

std::string_view to_string(Activation a) {
    switch (a) {
        case Activation::tanh: return "tanh";
        case Activation::sigmoid: return "sigmoid";
        case Activation::hard_sigmoid: return "hard-sigmoid";
        case Activation::relu: return "relu";
    }
    fail(ErrorCode::internal, "to_string: bad activation value");
}

double activate(Activation a, double x) {
    switch (a) {
        case Activation::tanh: return std::tanh(x);
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case Activation::hard_sigmoid: return std::clamp(0.2 * x + 0.5, 0.0, 1.0);
        case Activation::relu: return x > 0.0 ? x : 0.0;
    }
    fail(ErrorCode::internal, "activate: bad activation value");
}

double activate_grad(Activation a, double x) {
    switch (a) {
        case Activation::tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
        case Activation::sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-x));
            return s * (1.0 - s);
        }
        case Activation::hard_sigmoid:
            return (x > -2.5 && x < 2.5) ? 0.2 : 0.0;
        case Activation::relu:
            return x > 0.0 ? 1.0 : 0.0;
    }
    fail(ErrorCode::internal, "activate_grad: bad activation value");
}

Vector activate(Activation a, std::span<const double> x) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = activate(a, x[i]);
    return out;
}

Vector activate_grad(Activation a, std::span<const double> x) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = activate_grad(a, x[i]);
    return out;
}

}  // namespace zsl
