#pragma once

// Reference implementations that share no code with the library beyond the
// operator matrices themselves.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dlmg/dlmg.hpp"

namespace oracle {

using dlmg::cplx;
using dlmg::DenseMat;

// Liouvillian on column-stacked vec(rho), built entry by entry from
// L(rho)_{ab} = sum_{cd} L[(a,b),(c,d)] rho_{cd}.
inline DenseMat superoperator(const DenseMat& H, const std::vector<std::pair<double, DenseMat>>& ops) {
    const int n = static_cast<int>(H.rows());
    DenseMat L = DenseMat::Zero(n * n, n * n);
    const cplx I(0.0, 1.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    cplx v = 0.0;
                    // -i(H rho - rho H)
                    if (d == b) v += -I * H(a, c);
                    if (c == a) v += I * H(d, b);
                    for (const auto& [rate, A] : ops) {
                        DenseMat AdA = A.adjoint() * A;
                        cplx w = 2.0 * A(a, c) * std::conj(A(b, d));
                        if (d == b) w -= AdA(a, c);
                        if (c == a) w -= AdA(d, b);
                        v += rate * w;
                    }
                    L(a + b * n, c + d * n) = v;
                }
    return L;
}

// Right singular vector of the smallest singular value, reshaped and
// normalized to unit trace.
inline DenseMat null_state(const DenseMat& L, int n, double* second_sv = nullptr) {
    Eigen::JacobiSVD<DenseMat> svd(L, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::VectorXcd v = svd.matrixV().col(s.size() - 1);
    if (second_sv) *second_sv = s(s.size() - 2);
    DenseMat rho(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) rho(r, c) = v(r + c * n);
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

// Wootters concurrence of a two-qubit state (basis uu, ud, du, dd), from
// sqrt(rho): the square roots of the eigenvalues of rho rho~ are the singular
// values of sqrt(rho) (Y x Y) conj(sqrt(rho)), which avoids square roots of
// round-off sized eigenvalues.
inline double wootters_from_sqrt(const Eigen::Matrix4cd& sq) {
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(3, 0) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(sq * yy * sq.conjugate());
    const auto& l = svd.singularValues();  // descending
    return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

inline DenseMat psd_sqrt(const DenseMat& rho) {
    Eigen::SelfAdjointEigenSolver<DenseMat> es(rho);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Embed a spin-1 Dicke-basis state (m = 1, 0, -1) into two qubits.
inline Eigen::Matrix4cd embed_two_qubits(const DenseMat& rho3) {
    Eigen::Matrix<cplx, 4, 3> V = Eigen::Matrix<cplx, 4, 3>::Zero();
    V(0, 0) = 1.0;
    V(1, 1) = V(2, 1) = 1.0 / std::sqrt(2.0);
    V(3, 2) = 1.0;
    return V * rho3 * V.adjoint();
}

// Concurrence of the two-qubit state of a spin-1 Dicke-basis state. The
// square root is taken in the symmetric subspace, where it is exact on the
// singlet direction.
inline double wootters_dicke(const DenseMat& rho3) {
    return wootters_from_sqrt(embed_two_qubits(psd_sqrt(rho3)));
}

// Random density matrix with rho_{kl} = 0 for odd k + l.
inline DenseMat random_parity_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    DenseMat m(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) m(r, c) = cplx(g(rng), g(rng));
    DenseMat rho = m * m.adjoint();
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r)
            if ((r + c) % 2) rho(r, c) = 0.0;
    return rho / rho.trace();
}

inline DenseMat random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    DenseMat m(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) m(r, c) = cplx(g(rng), g(rng));
    DenseMat rho = m * m.adjoint();
    return rho / rho.trace();
}

inline std::vector<std::pair<double, DenseMat>> dense_ops(const dlmg::LindbladSpec& spec) {
    std::vector<std::pair<double, DenseMat>> out;
    for (const auto& d : spec.dissipators()) out.emplace_back(d.rate, d.collapse.dense());
    return out;
}

}  // namespace oracle
