#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>

#include "errors.hpp"

namespace photonsim {

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

// Neumaier summation on a real component.
struct NeumaierReal {
    double sum = 0;
    double comp = 0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Plain accumulation for small n, compensated accumulation beyond 16
// rows where 2^n terms of alternating sign start to lose digits.
template <typename Scalar>
class Accumulator {
   public:
    explicit Accumulator(bool compensated) : compensated_(compensated) {}

    void add(const Scalar &x) {
        if (!compensated_) {
            plain_ += x;
            return;
        }
        if constexpr (is_complex<Scalar>::value) {
            re_.add(x.real());
            im_.add(x.imag());
        } else {
            re_.add(x);
        }
    }

    Scalar value() const {
        if (!compensated_) {
            return plain_;
        }
        if constexpr (is_complex<Scalar>::value) {
            return Scalar(re_.value(), im_.value());
        } else {
            return re_.value();
        }
    }

   private:
    bool compensated_;
    Scalar plain_{0};
    NeumaierReal re_;
    NeumaierReal im_;
};

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived> &a) {
    if (a.rows() != a.cols()) {
        throw ShapeError("permanent needs a square matrix, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
    }
    if (a.rows() > 62) {
        throw ShapeError("permanent size beyond 62 is not representable");
    }
}

inline constexpr int kCompensateAbove = 16;

}  // namespace detail

// Ryser's formula, columns visited in Gray-code order: O(2^n n).
template <typename Derived>
typename Derived::Scalar permanent_ryser(const Eigen::MatrixBase<Derived> &a) {
    using Scalar = typename Derived::Scalar;
    detail::require_square(a);
    const int n = static_cast<int>(a.rows());
    if (n == 0) {
        return Scalar(1);
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row_sums = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
    detail::Accumulator<Scalar> total(n > detail::kCompensateAbove);
    const uint64_t count = uint64_t{1} << n;
    uint64_t gray = 0;
    for (uint64_t k = 1; k < count; k++) {
        int j = std::countr_zero(k);
        uint64_t bit = uint64_t{1} << j;
        gray ^= bit;
        if (gray & bit) {
            row_sums += a.col(j);
        } else {
            row_sums -= a.col(j);
        }
        Scalar prod = row_sums.prod();
        if (std::popcount(gray) & 1) {
            total.add(-prod);
        } else {
            total.add(prod);
        }
    }
    Scalar r = total.value();
    return (n & 1) ? -r : r;
}

// Glynn's formula with Gray-code sign flips: O(2^(n-1) n).
template <typename Derived>
typename Derived::Scalar permanent_glynn(const Eigen::MatrixBase<Derived> &a) {
    using Scalar = typename Derived::Scalar;
    detail::require_square(a);
    const int n = static_cast<int>(a.rows());
    if (n == 0) {
        return Scalar(1);
    }
    // col_sums(j) = sum_i delta_i a(i, j), all deltas start at +1.
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> col_sums = a.colwise().sum();
    detail::Accumulator<Scalar> total(n > detail::kCompensateAbove);
    total.add(col_sums.prod());
    const uint64_t count = uint64_t{1} << (n - 1);
    uint64_t gray = 0;
    int sign = 1;
    for (uint64_t k = 1; k < count; k++) {
        int j = std::countr_zero(k);
        uint64_t bit = uint64_t{1} << j;
        gray ^= bit;
        // Row j+1 flips; row 0 keeps delta = +1.
        if (gray & bit) {
            col_sums -= Scalar(2) * a.row(j + 1);
        } else {
            col_sums += Scalar(2) * a.row(j + 1);
        }
        sign = -sign;
        Scalar prod = col_sums.prod();
        total.add(sign > 0 ? prod : -prod);
    }
    return total.value() / static_cast<double>(count);
}

template <typename Derived>
typename Derived::Scalar permanent(const Eigen::MatrixBase<Derived> &a) {
    return permanent_ryser(a);
}

}  // namespace photonsim
