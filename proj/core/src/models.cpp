#include "dlmg/models.hpp"

#include <cmath>
#include <tuple>

#include "dlmg/error.hpp"

namespace dlmg {

std::pair<double, double> adiabatic_rates(double lambda_i, double kappa_i, double delta_i) {
    double den = kappa_i * kappa_i + delta_i * delta_i;
    if (den == 0.0) {
        if (lambda_i == 0.0) return {0.0, 0.0};
        throw DomainError("adiabatic_rates: kappa and delta both zero");
    }
    double l2 = lambda_i * lambda_i;
    return {l2 * delta_i / den, l2 * kappa_i / den};
}

namespace {

// lambda*alpha and lambda*beta are known; split so max(|alpha|,|beta|) = 1.
// Phases of the complex products are absorbed into the atomic basis.
void split_coupling(cplx la, cplx lb, double& lambda, double& alpha, double& beta) {
    double pa = std::abs(la), pb = std::abs(lb);
    lambda = std::max(pa, pb);
    alpha = lambda > 0.0 ? pa / lambda : 0.0;
    beta = lambda > 0.0 ? pb / lambda : 0.0;
}

}  // namespace

EffectiveParams effective_params(const MicroscopicParams& m) {
    if (m.delta_r == 0.0 || m.delta_s == 0.0) throw DomainError("effective_params: zero excited-state detuning");
    if (m.kappa_a < 0.0 || m.kappa_b < 0.0) throw DomainError("effective_params: negative cavity decay rate");
    if (m.n_atoms < 1) throw DomainError("effective_params: n_atoms must be >= 1");

    EffectiveParams e;
    const double dr = m.delta_r, ds = m.delta_s;
    e.omega_0 = 0.25 * (std::norm(m.rabi_r1) / dr + std::norm(m.rabi_s1) / ds - std::norm(m.rabi_r0) / dr -
                        std::norm(m.rabi_s0) / ds) +
                m.omega_1 - m.omega_1_prime;
    e.h = -0.5 * e.omega_0;

    e.delta_a_plus = 0.5 * (std::norm(m.g_s1) / ds + std::norm(m.g_r0) / dr);
    e.delta_a_minus = 0.5 * (std::norm(m.g_s1) / ds - std::norm(m.g_r0) / dr);
    e.delta_b_plus = 0.5 * (std::norm(m.g_r1) / dr + std::norm(m.g_s0) / ds);
    e.delta_b_minus = 0.5 * (std::norm(m.g_r1) / dr - std::norm(m.g_s0) / ds);

    const double sn = std::sqrt(double(m.n_atoms));
    split_coupling(sn * std::conj(m.rabi_r1) * m.g_r0 / (2.0 * dr), sn * std::conj(m.rabi_s0) * m.g_s1 / (2.0 * ds),
                   e.lambda_a, e.alpha_a, e.beta_a);
    split_coupling(sn * std::conj(m.rabi_s1) * m.g_s0 / (2.0 * ds), sn * std::conj(m.rabi_r0) * m.g_r1 / (2.0 * dr),
                   e.lambda_b, e.alpha_b, e.beta_b);

    std::tie(e.Lambda_a, e.Gamma_a) = adiabatic_rates(e.lambda_a, m.kappa_a, m.delta_a_raw);
    std::tie(e.Lambda_b, e.Gamma_b) = adiabatic_rates(e.lambda_b, m.kappa_b, m.delta_b_raw);
    return e;
}

void LMGParams::validate() const {
    if (n_atoms < 1) throw DomainError("LMGParams: n_atoms must be >= 1");
    if (gamma_anisotropy < -1 || gamma_anisotropy > 1)
        throw DomainError("LMGParams: gamma_anisotropy must be -1, 0 or +1");
    if (!(gamma_a >= 0.0) || !(gamma_b >= 0.0)) throw DomainError("LMGParams: rates must be >= 0");
    if (!std::isfinite(h) || !std::isfinite(lambda)) throw DomainError("LMGParams: non-finite h or lambda");
}

std::pair<double, double> conventional_rates(double gamma, double alpha, double beta) {
    if (gamma < 0.0) throw DomainError("conventional_rates: negative rate");
    return {gamma * alpha * alpha, gamma * beta * beta};
}

namespace {

void check_pair(const LMGParams& p, const DickeAlgebra& alg, int want) {
    p.validate();
    if (p.gamma_anisotropy != want) throw DomainError("model builder: wrong gamma_anisotropy");
    if (alg.n_spins != p.n_atoms) throw DimensionError("model builder: algebra built for a different N");
}

LindbladSpec assemble(Operator h, std::vector<Dissipator> ds) {
    // products of Hermitian pieces lose the flag; restore after the check
    h = 0.5 * (h + h.adjoint());
    h.mark_hermitian();
    return LindbladSpec(std::move(h), std::move(ds));
}

}  // namespace

LindbladSpec build_gamma0(const LMGParams& p, const DickeAlgebra& alg) {
    check_pair(p, alg, 0);
    const double n = p.n_atoms;
    Operator h = (-2.0 * p.h) * alg.jz + (-2.0 * p.lambda / n) * (alg.jx * alg.jx);
    return assemble(h, {{p.gamma_a / n, 2.0 * alg.jx}, {p.gamma_b / n, alg.jplus}});
}

LindbladSpec build_conventional(const LMGParams& p, const DickeAlgebra& alg) {
    check_pair(p, alg, -1);
    const double n = p.n_atoms;
    Operator h = (-2.0 * p.h) * alg.jz + (-2.0 * p.lambda / n) * (alg.jx * alg.jx - alg.jy * alg.jy);
    return assemble(h, {{p.gamma_a / n, alg.jplus}, {p.gamma_b / n, alg.jminus}});
}

LindbladSpec build_isotropic(const LMGParams& p, const DickeAlgebra& alg) {
    check_pair(p, alg, 1);
    const double n = p.n_atoms;
    Operator h = (-2.0 * p.h) * alg.jz + (-2.0 * p.lambda / n) * (alg.jx * alg.jx + alg.jy * alg.jy);
    return assemble(h, {{p.gamma_a / n, alg.jminus}, {p.gamma_b / n, alg.jplus}});
}

LindbladSpec build_model(const LMGParams& p, const DickeAlgebra& alg) {
    switch (p.gamma_anisotropy) {
        case -1: return build_conventional(p, alg);
        case 1: return build_isotropic(p, alg);
        default: return build_gamma0(p, alg);
    }
}

}  // namespace dlmg
