#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace opspace {

using cplx = std::complex<double>;

// Dense row-major complex matrix. The universal carrier for every space,
// operator and witness in this library. All entries must stay finite;
// routines that consume external data call ensure_finite().
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }
    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    cplx& at(int i, int j);
    const cplx& at(int i, int j) const;

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

cplx trace(const ComplexMatrix& a);

// Hilbert-Schmidt pairing <a, b> = tr(b^* a), linear in a.
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Throws std::invalid_argument naming `what` if any entry is NaN/Inf.
void ensure_finite(const ComplexMatrix& a, const std::string& what);

// Assembles a grid of blocks into one matrix. Row heights and column widths
// must be consistent across the grid; violations report the offending index.
ComplexMatrix block_assemble(const std::vector<std::vector<ComplexMatrix>>& blocks);

// diag(a_1, ..., a_m). Empty list is rejected.
ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks);

// Kronecker product, (a ox b)((i,k),(j,l)) = a(i,j) b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace opspace
