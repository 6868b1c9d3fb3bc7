#pragma once

#include "dlmg/operators.hpp"

namespace dlmg {

struct StateCheck {
    double hermiticity = 0.0;  // max|rho - rho^dag|
    double trace_error = 0.0;  // |tr rho - 1|
    double min_eigenvalue = 0.0;

    bool ok(double herm_tol = 1e-10, double trace_tol = 1e-10, double pos_tol = 1e-8) const {
        return hermiticity <= herm_tol && trace_error <= trace_tol && min_eigenvalue >= -pos_tol;
    }
};

StateCheck check_state(const DenseMat& m);

class DensityMatrix {
public:
    // Throws DomainError when the invariants fail and validate is true.
    explicit DensityMatrix(DenseMat m, bool validate = true);

    static DensityMatrix pure(const Eigen::VectorXcd& psi);
    static DensityMatrix basis_state(int dim, int index);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const DenseMat& matrix() const { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }
    StateCheck check() const { return check_state(m_); }

private:
    DenseMat m_;
};

}  // namespace dlmg
