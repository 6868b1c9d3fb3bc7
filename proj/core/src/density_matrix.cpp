#include "dlmg/density_matrix.hpp"

#include <Eigen/Eigenvalues>

#include "dlmg/error.hpp"

namespace dlmg {

StateCheck check_state(const DenseMat& m) {
    StateCheck c;
    if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError("check_state: not a square matrix");
    c.hermiticity = (m - m.adjoint()).cwiseAbs().maxCoeff();
    c.trace_error = std::abs(m.trace() - cplx(1.0));
    DenseMat herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMat> es(herm, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

DensityMatrix::DensityMatrix(DenseMat m, bool validate) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
        throw DimensionError("DensityMatrix: not a square matrix");
    if (!validate) return;
    StateCheck c = check_state(m_);
    if (!c.ok())
        throw DomainError("DensityMatrix: invalid state (hermiticity " + std::to_string(c.hermiticity) +
                          ", trace error " + std::to_string(c.trace_error) + ", min eigenvalue " +
                          std::to_string(c.min_eigenvalue) + ")");
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
    double nrm = psi.norm();
    if (nrm == 0.0) throw DomainError("DensityMatrix::pure: zero vector");
    Eigen::VectorXcd v = psi / nrm;
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
    if (index < 0 || index >= dim) throw DimensionError("DensityMatrix::basis_state: index out of range");
    DenseMat m = DenseMat::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m), false);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(DenseMat::Identity(dim, dim) / double(dim), false);
}

}  // namespace dlmg
