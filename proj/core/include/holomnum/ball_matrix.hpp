#pragma once

#include <cstddef>
#include <vector>

#include "holomnum/ball.hpp"

namespace holomnum {

/// Dense matrix of complex balls, row-major.
class BallMatrix {
public:
    BallMatrix() = default;
    BallMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static BallMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    ComplexBall& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const ComplexBall& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    /// Largest entry radius (real or imaginary part).
    Float max_rad() const;
    bool is_finite() const;
    bool contains(const BallMatrix& other) const;
    bool overlaps(const BallMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<ComplexBall> a_;
};

/// Throws std::invalid_argument on dimension mismatch.
BallMatrix mat_mul(const BallMatrix& a, const BallMatrix& b, Prec prec);

/// Solves A X = B by Gaussian elimination. Each pivot is the candidate of
/// largest certified lower bound; throws PrecisionError when every candidate
/// pivot contains zero.
BallMatrix mat_solve(const BallMatrix& a, const BallMatrix& b, Prec prec);
BallMatrix mat_inverse(const BallMatrix& a, Prec prec);

/// Column vector times matrix helpers.
std::vector<ComplexBall> mat_vec(const BallMatrix& a, const std::vector<ComplexBall>& v, Prec prec);

}  // namespace holomnum
