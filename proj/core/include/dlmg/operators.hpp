#pragma once

#include <complex>
#include <string>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dlmg {

using cplx = std::complex<double>;
using DenseMat = Eigen::MatrixXcd;
using SparseMat = Eigen::SparseMatrix<cplx>;

class DensityMatrix;

// Operators with dim above this are stored sparse.
inline constexpr int kSparseAbove = 64;

// Square complex matrix in the Dicke basis. Storage is picked from dim alone,
// so two operators of equal dim always share a representation.
class Operator {
public:
    Operator() = default;
    explicit Operator(const DenseMat& m);
    explicit Operator(const SparseMat& m);

    static Operator identity(int dim);
    static Operator zero(int dim);

    int dim() const { return dim_; }
    bool is_sparse() const { return std::holds_alternative<SparseMat>(data_); }

    DenseMat dense() const;
    SparseMat sparse() const;
    cplx coeff(int row, int col) const;
    // Direct access without copying; throws if the storage is the other kind.
    const DenseMat& dense_storage() const;
    const SparseMat& sparse_storage() const;

    // The flag is only ever set after a check, so hermitian() implies
    // max|A - A^dag| <= 1e-12.
    bool hermitian() const { return hermitian_; }
    Operator& mark_hermitian(double tol = 1e-12);
    double hermiticity_error() const;

    Operator adjoint() const;
    Operator transpose() const;
    Operator conjugate() const;

    Operator operator+(const Operator& o) const;
    Operator operator-(const Operator& o) const;
    Operator operator*(const Operator& o) const;
    Operator operator*(cplx s) const;
    Operator operator-() const { return (*this) * cplx(-1.0); }
    friend Operator operator*(cplx s, const Operator& a) { return a * s; }
    friend Operator operator*(double s, const Operator& a) { return a * cplx(s); }

    // A X and X A for a dense X
    DenseMat left_apply(const DenseMat& x) const;
    DenseMat right_apply(const DenseMat& x) const;

    double max_abs() const;

    // {"dim": n, "triplets": [[row, col, re, im], ...]}; debugging aid only
    std::string to_json() const;

private:
    void adopt(SparseMat m);

    int dim_ = 0;
    std::variant<DenseMat, SparseMat> data_;
    bool hermitian_ = false;
};

double max_abs_diff(const Operator& a, const Operator& b);
Operator commutator(const Operator& a, const Operator& b);

struct DickeAlgebra {
    int n_spins = 0;
    double j = 0.0;
    Operator jx, jy, jz, jplus, jminus;

    int dim() const { return n_spins + 1; }
    Operator identity() const { return Operator::identity(dim()); }
    // exp(i pi Jz) up to a global phase: diag((-1)^(j-m))
    Operator parity() const;
};

// Basis index k <-> m = j - k, so index 0 is the all-up state.
DickeAlgebra build_algebra(int n_spins);

cplx expectation(const Operator& op, const DensityMatrix& rho);
cplx expectation(const Operator& op, const DenseMat& rho);

}  // namespace dlmg
