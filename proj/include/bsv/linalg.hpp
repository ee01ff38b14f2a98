#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bsv {

// Dense complex matrix, row-major. Only the handful of operations the
// moment algebra needs; sizes here are a few modes, not thousands.
class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::complex<double>& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const std::complex<double>& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    CMat operator*(const CMat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("CMat: shape mismatch in product");
        CMat out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const auto a = (*this)(i, k);
                if (a == std::complex<double>{}) continue;
                for (int j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
            }
        return out;
    }

    CMat adjoint() const {
        CMat out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    CMat transpose() const {
        CMat out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    CMat conj() const {
        CMat out(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(i, j) = std::conj((*this)(i, j));
        return out;
    }

    std::complex<double> trace() const {
        std::complex<double> t = 0;
        for (int i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs_diff(const CMat& o) const {
        double d = 0;
        for (size_t i = 0; i < data_.size(); ++i) d = std::max(d, std::abs(data_[i] - o.data_[i]));
        return d;
    }

    bool is_hermitian(double tol) const {
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    bool is_symmetric(double tol) const {
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        return true;
    }

    bool is_unitary(double tol) const {
        if (rows_ != cols_) return false;
        CMat p = (*this) * adjoint();
        return p.max_abs_diff(identity(rows_)) <= tol;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::complex<double>> data_;
};

} // namespace bsv
