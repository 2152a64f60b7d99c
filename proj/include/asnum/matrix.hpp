#ifndef ASNUM_MATRIX_HPP
#define ASNUM_MATRIX_HPP

// Dense matrices over F_{p^k}: products, Frobenius twists, rank, kernels and
// reduced row echelon forms.

#include <string>
#include <vector>

#include "error.hpp"
#include "fields.hpp"

namespace asnum {

class Matrix {
  public:
    Matrix() = default;
    Matrix(const FieldDescriptor& f, std::size_t rows, std::size_t cols)
        : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, Fq::zero(f)) {}

    static Matrix identity(const FieldDescriptor& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Fq::one(f);
        return m;
    }

    const FieldDescriptor& field() const noexcept { return *f_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Fq& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Fq& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw DomainError("matrix dimension mismatch");
        if (x.f_ != y.f_) throw DomainError("mixed-field matrix product");
        Matrix r(*x.f_, x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Fq& a = x(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += a * y(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw DomainError("matrix dimension mismatch");
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    Matrix transpose() const {
        Matrix t(*f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // Entrywise a -> a^(p^e).
    Matrix twist(long long e) const {
        Matrix t = *this;
        for (auto& a : t.a_) a = a.frobenius(e);
        return t;
    }

    bool is_zero() const {
        for (const auto& a : a_)
            if (!a.is_zero()) return false;
        return true;
    }

    // Rows of other appended below this one.
    Matrix stack(const Matrix& other) const {
        if (cols_ != other.cols_) throw DomainError("matrix dimension mismatch");
        Matrix r(*f_, rows_ + other.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < other.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = other(i, j);
        return r;
    }

    Matrix columns(const std::vector<std::size_t>& idx) const {
        Matrix r(*f_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
        return r;
    }

    // Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> piv;
        std::size_t row = 0;
        for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
            std::size_t r = row;
            while (r < rows_ && (*this)(r, c).is_zero()) ++r;
            if (r == rows_) continue;
            if (r != row)
                for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(row, j));
            Fq inv = (*this)(row, c).inv();
            for (std::size_t j = c; j < cols_; ++j) (*this)(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || (*this)(i, c).is_zero()) continue;
                Fq m = (*this)(i, c);
                for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= m * (*this)(row, j);
            }
            piv.push_back(c);
            ++row;
        }
        return piv;
    }

    std::size_t rank() const {
        Matrix t = *this;
        return t.rref().size();
    }

    Fq det() const {
        if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
        Matrix t = *this;
        Fq d = Fq::one(*f_);
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t r = c;
            while (r < rows_ && t(r, c).is_zero()) ++r;
            if (r == rows_) return Fq::zero(*f_);
            if (r != c) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(t(r, j), t(c, j));
                d = -d;
            }
            d *= t(c, c);
            Fq inv = t(c, c).inv();
            for (std::size_t i = c + 1; i < rows_; ++i) {
                if (t(i, c).is_zero()) continue;
                Fq m = t(i, c) * inv;
                for (std::size_t j = c; j < cols_; ++j) t(i, j) -= m * t(c, j);
            }
        }
        return d;
    }

    // Basis of {v : A v = 0} as the columns of the result.
    Matrix kernel() const {
        Matrix t = *this;
        auto piv = t.rref();
        std::vector<bool> is_piv(cols_, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::size_t> free;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_piv[c]) free.push_back(c);
        Matrix k(*f_, cols_, free.size());
        for (std::size_t j = 0; j < free.size(); ++j) {
            k(free[j], j) = Fq::one(*f_);
            for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], j) = -t(r, free[j]);
        }
        return k;
    }

    // Reduced basis of the column space, as columns.
    Matrix column_space() const {
        Matrix t = transpose();
        auto piv = t.rref();
        Matrix r(*f_, rows_, piv.size());
        for (std::size_t j = 0; j < piv.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) r(i, j) = t(j, i);
        return r;
    }

    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
        return out;
    }

  private:
    const FieldDescriptor* f_ = nullptr;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Fq> a_;
};

}  // namespace asnum

#endif
