#include "opspace/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace opspace {

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("ComplexMatrix: negative dimension");
    data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

cplx& ComplexMatrix::at(int i, int j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw std::out_of_range("ComplexMatrix::at: index (" + std::to_string(i) + "," +
                                std::to_string(j) + ") outside " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
    return (*this)(i, j);
}

const cplx& ComplexMatrix::at(int i, int j) const {
    return const_cast<ComplexMatrix*>(this)->at(i, j);
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(op) + ": shape mismatch " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "matrix add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "matrix subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
    for (auto& v : data_) v *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix multiply: inner dimensions " +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
    ComplexMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

cplx trace(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("trace: matrix is " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()));
    cplx t = 0.0;
    for (int i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "hs_inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * std::conj(b.data()[i]);
    return s;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

void ensure_finite(const ComplexMatrix& a, const std::string& what) {
    for (const auto& v : a.data())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument(what + ": non-finite entry");
}

ComplexMatrix block_assemble(const std::vector<std::vector<ComplexMatrix>>& blocks) {
    if (blocks.empty() || blocks[0].empty())
        throw std::invalid_argument("block_assemble: empty block grid");
    const std::size_t bcols = blocks[0].size();
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].size() != bcols)
            throw std::invalid_argument("block_assemble: row " + std::to_string(i) + " has " +
                                        std::to_string(blocks[i].size()) + " blocks, expected " +
                                        std::to_string(bcols));
    std::vector<int> heights(blocks.size()), widths(bcols);
    for (std::size_t i = 0; i < blocks.size(); ++i) heights[i] = blocks[i][0].rows();
    for (std::size_t j = 0; j < bcols; ++j) widths[j] = blocks[0][j].cols();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = 0; j < bcols; ++j) {
            if (blocks[i][j].rows() != heights[i] || blocks[i][j].cols() != widths[j])
                throw std::invalid_argument(
                    "block_assemble: block (" + std::to_string(i) + "," + std::to_string(j) +
                    ") is " + std::to_string(blocks[i][j].rows()) + "x" +
                    std::to_string(blocks[i][j].cols()) + ", expected " +
                    std::to_string(heights[i]) + "x" + std::to_string(widths[j]));
        }
    }
    int total_r = 0, total_c = 0;
    for (int h : heights) total_r += h;
    for (int w : widths) total_c += w;
    ComplexMatrix out(total_r, total_c);
    int roff = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        int coff = 0;
        for (std::size_t j = 0; j < bcols; ++j) {
            const ComplexMatrix& blk = blocks[i][j];
            for (int r = 0; r < blk.rows(); ++r)
                for (int c = 0; c < blk.cols(); ++c) out(roff + r, coff + c) = blk(r, c);
            coff += widths[j];
        }
        roff += heights[i];
    }
    return out;
}

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("direct_sum: empty block list");
    int total_r = 0, total_c = 0;
    for (const auto& b : blocks) {
        total_r += b.rows();
        total_c += b.cols();
    }
    ComplexMatrix out(total_r, total_c);
    int roff = 0, coff = 0;
    for (const auto& b : blocks) {
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) out(roff + r, coff + c) = b(r, c);
        roff += b.rows();
        coff += b.cols();
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

} // namespace opspace
