#include "holomnum/ball_matrix.hpp"

#include <stdexcept>

#include "holomnum/error.hpp"

namespace holomnum {

BallMatrix BallMatrix::identity(std::size_t n) {
    BallMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ComplexBall(1);
    return m;
}

Float BallMatrix::max_rad() const {
    Float r(kMagPrec);
    for (const auto& e : a_) {
        Float x = e.max_rad();
        mpfr_max(r.get(), r.get(), x.get(), MPFR_RNDU);
    }
    return r;
}

bool BallMatrix::is_finite() const {
    for (const auto& e : a_)
        if (!e.is_finite()) return false;
    return true;
}

bool BallMatrix::contains(const BallMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (!a_[k].contains(other.a_[k])) return false;
    return true;
}

bool BallMatrix::overlaps(const BallMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (!a_[k].overlaps(other.a_[k])) return false;
    return true;
}

BallMatrix mat_mul(const BallMatrix& a, const BallMatrix& b, Prec prec) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
    BallMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            ComplexBall s;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
                s = add(s, mul(a(i, k), b(k, j), prec), prec);
            }
            c(i, j) = std::move(s);
        }
    }
    return c;
}

std::vector<ComplexBall> mat_vec(const BallMatrix& a, const std::vector<ComplexBall>& v, Prec prec) {
    if (a.cols() != v.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    std::vector<ComplexBall> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] = add(out[i], mul(a(i, k), v[k], prec), prec);
    return out;
}

BallMatrix mat_solve(const BallMatrix& a, const BallMatrix& b, Prec prec) {
    if (a.rows() != a.cols()) throw std::invalid_argument("mat_solve: matrix not square");
    if (a.rows() != b.rows()) throw std::invalid_argument("mat_solve: dimension mismatch");
    const std::size_t n = a.rows(), m = b.cols();
    BallMatrix u = a, x = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        Float best(kMagPrec);
        for (std::size_t i = col; i < n; ++i) {
            Float l = u(i, col).lower_abs();
            if (mpfr_cmp(l.get(), best.get()) > 0) {
                best = l;
                piv = i;
            }
        }
        if (piv == n) throw PrecisionError("mat_solve: pivot contains zero");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(u(col, j), u(piv, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(x(col, j), x(piv, j));
        }
        ComplexBall pinv = inv(u(col, col), prec);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (u(i, col).is_zero()) continue;
            ComplexBall f = mul(u(i, col), pinv, prec);
            for (std::size_t j = col + 1; j < n; ++j) u(i, j) = sub(u(i, j), mul(f, u(col, j), prec), prec);
            for (std::size_t j = 0; j < m; ++j) x(i, j) = sub(x(i, j), mul(f, x(col, j), prec), prec);
            u(i, col) = ComplexBall();
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = 0; j < m; ++j) {
            ComplexBall s = x(ii, j);
            for (std::size_t k = ii + 1; k < n; ++k)
                if (!u(ii, k).is_zero()) s = sub(s, mul(u(ii, k), x(k, j), prec), prec);
            x(ii, j) = div(s, u(ii, ii), prec);
        }
    }
    return x;
}

BallMatrix mat_inverse(const BallMatrix& a, Prec prec) {
    return mat_solve(a, BallMatrix::identity(a.rows()), prec);
}

}  // namespace holomnum
