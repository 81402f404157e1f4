#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace zsl {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Deliberately minimal: just storage plus
// the handful of kernels the embedding network needs.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);

Matrix matmul(const Matrix& a, const Matrix& b);

// a·x and aᵀ·x.
Vector matvec(const Matrix& a, std::span<const double> x);
Vector matvec_transposed(const Matrix& a, std::span<const double> x);

// Temperature softmax with max-subtraction, so arbitrarily large score
// magnitudes never overflow and shifting all inputs by a constant is a no-op.
Vector softmax(std::span<const double> v, double tau = 1.0);

enum class Activation : std::uint8_t {
    tanh = 0,
    sigmoid = 1,
    hard_sigmoid = 2,
    relu = 3,
};

// Throws on unrecognized names; accepts "hard-sigmoid" and "hard_sigmoid".
Activation activation_from_name(std::string_view name);
std::string_view to_string(Activation a);

// Elementwise nonlinearity and its exact derivative. Conventions at the
// non-differentiable points: relu'(0) = 0, hard-sigmoid' = 0 at the clip
// boundaries (|x| = 2.5).
double activate(Activation a, double x);
double activate_grad(Activation a, double x);
Vector activate(Activation a, std::span<const double> x);
Vector activate_grad(Activation a, std::span<const double> x);

}  // namespace zsl
