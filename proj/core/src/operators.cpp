#include "dlmg/operators.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "dlmg/density_matrix.hpp"
#include "dlmg/error.hpp"

namespace dlmg {

namespace {

void require_same_dim(int a, int b, const char* where) {
    if (a != b)
        throw DimensionError(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
}

}  // namespace

Operator::Operator(const DenseMat& m) {
    if (m.rows() != m.cols()) throw DimensionError("Operator: matrix is not square");
    dim_ = static_cast<int>(m.rows());
    if (dim_ > kSparseAbove)
        data_ = SparseMat(m.sparseView(0.0, 0.0));
    else
        data_ = m;
}

Operator::Operator(const SparseMat& m) {
    if (m.rows() != m.cols()) throw DimensionError("Operator: matrix is not square");
    adopt(m);
}

void Operator::adopt(SparseMat m) {
    dim_ = static_cast<int>(m.rows());
    if (dim_ > kSparseAbove) {
        m.makeCompressed();
        data_ = std::move(m);
    } else {
        data_ = DenseMat(m);
    }
}

const DenseMat& Operator::dense_storage() const {
    if (auto* d = std::get_if<DenseMat>(&data_)) return *d;
    throw Error("Operator::dense_storage: operator is stored sparse");
}

const SparseMat& Operator::sparse_storage() const {
    if (auto* s = std::get_if<SparseMat>(&data_)) return *s;
    throw Error("Operator::sparse_storage: operator is stored dense");
}

Operator Operator::identity(int dim) {
    SparseMat m(dim, dim);
    m.setIdentity();
    Operator op(m);
    op.hermitian_ = true;
    return op;
}

Operator Operator::zero(int dim) { return Operator(SparseMat(dim, dim)); }

DenseMat Operator::dense() const {
    if (auto* d = std::get_if<DenseMat>(&data_)) return *d;
    return DenseMat(std::get<SparseMat>(data_));
}

SparseMat Operator::sparse() const {
    if (auto* s = std::get_if<SparseMat>(&data_)) return *s;
    return std::get<DenseMat>(data_).sparseView(0.0, 0.0);
}

cplx Operator::coeff(int row, int col) const {
    if (auto* d = std::get_if<DenseMat>(&data_)) return (*d)(row, col);
    return std::get<SparseMat>(data_).coeff(row, col);
}

double Operator::hermiticity_error() const {
    if (auto* d = std::get_if<DenseMat>(&data_)) return (*d - d->adjoint()).cwiseAbs().maxCoeff();
    const auto& s = std::get<SparseMat>(data_);
    SparseMat diff = s - SparseMat(s.adjoint());
    double worst = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMat::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    return worst;
}

Operator& Operator::mark_hermitian(double tol) {
    double err = hermiticity_error();
    if (err > tol)
        throw DomainError("Operator::mark_hermitian: deviation " + std::to_string(err));
    hermitian_ = true;
    return *this;
}

Operator Operator::adjoint() const {
    Operator r;
    r.dim_ = dim_;
    r.hermitian_ = hermitian_;
    if (auto* d = std::get_if<DenseMat>(&data_))
        r.data_ = DenseMat(d->adjoint());
    else
        r.data_ = SparseMat(std::get<SparseMat>(data_).adjoint());
    return r;
}

Operator Operator::transpose() const {
    Operator r;
    r.dim_ = dim_;
    if (auto* d = std::get_if<DenseMat>(&data_))
        r.data_ = DenseMat(d->transpose());
    else
        r.data_ = SparseMat(std::get<SparseMat>(data_).transpose());
    return r;
}

Operator Operator::conjugate() const {
    Operator r;
    r.dim_ = dim_;
    if (auto* d = std::get_if<DenseMat>(&data_))
        r.data_ = DenseMat(d->conjugate());
    else
        r.data_ = SparseMat(std::get<SparseMat>(data_).conjugate());
    return r;
}

Operator Operator::operator+(const Operator& o) const {
    require_same_dim(dim_, o.dim_, "Operator::operator+");
    Operator r;
    r.dim_ = dim_;
    if (is_sparse())
        r.data_ = SparseMat(std::get<SparseMat>(data_) + std::get<SparseMat>(o.data_));
    else
        r.data_ = DenseMat(std::get<DenseMat>(data_) + std::get<DenseMat>(o.data_));
    return r;
}

Operator Operator::operator-(const Operator& o) const { return *this + (-o); }

Operator Operator::operator*(const Operator& o) const {
    require_same_dim(dim_, o.dim_, "Operator::operator*");
    Operator r;
    r.dim_ = dim_;
    if (is_sparse())
        r.data_ = SparseMat((std::get<SparseMat>(data_) * std::get<SparseMat>(o.data_)).pruned());
    else
        r.data_ = DenseMat(std::get<DenseMat>(data_) * std::get<DenseMat>(o.data_));
    return r;
}

Operator Operator::operator*(cplx s) const {
    Operator r;
    r.dim_ = dim_;
    if (is_sparse())
        r.data_ = SparseMat(std::get<SparseMat>(data_) * s);
    else
        r.data_ = DenseMat(std::get<DenseMat>(data_) * s);
    r.hermitian_ = hermitian_ && s.imag() == 0.0;
    return r;
}

DenseMat Operator::left_apply(const DenseMat& x) const {
    require_same_dim(dim_, static_cast<int>(x.rows()), "Operator::left_apply");
    if (is_sparse()) return std::get<SparseMat>(data_) * x;
    return std::get<DenseMat>(data_) * x;
}

DenseMat Operator::right_apply(const DenseMat& x) const {
    require_same_dim(dim_, static_cast<int>(x.cols()), "Operator::right_apply");
    if (is_sparse()) return x * std::get<SparseMat>(data_);
    return x * std::get<DenseMat>(data_);
}

double Operator::max_abs() const {
    if (auto* d = std::get_if<DenseMat>(&data_)) return d->size() ? d->cwiseAbs().maxCoeff() : 0.0;
    double worst = 0.0;
    const auto& s = std::get<SparseMat>(data_);
    for (int k = 0; k < s.outerSize(); ++k)
        for (SparseMat::InnerIterator it(s, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    return worst;
}

std::string Operator::to_json() const {
    nlohmann::json doc;
    doc["dim"] = dim_;
    auto triplets = nlohmann::json::array();
    SparseMat s = sparse();
    // row-major listing, so sort by walking the transpose
    SparseMat t = s.transpose();
    for (int r = 0; r < t.outerSize(); ++r)
        for (SparseMat::InnerIterator it(t, r); it; ++it)
            triplets.push_back({r, static_cast<int>(it.index()), it.value().real(), it.value().imag()});
    doc["triplets"] = std::move(triplets);
    return doc.dump();
}

double max_abs_diff(const Operator& a, const Operator& b) { return (a - b).max_abs(); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator DickeAlgebra::parity() const {
    SparseMat p(dim(), dim());
    for (int k = 0; k < dim(); ++k) p.insert(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    Operator op(p);
    op.mark_hermitian();
    return op;
}

DickeAlgebra build_algebra(int n_spins) {
    if (n_spins < 1) throw DomainError("build_algebra: n_spins must be >= 1");
    DickeAlgebra alg;
    alg.n_spins = n_spins;
    alg.j = 0.5 * n_spins;
    const int d = n_spins + 1;
    const double j = alg.j;

    SparseMat jz(d, d), jp(d, d);
    jz.reserve(Eigen::VectorXi::Constant(d, 1));
    jp.reserve(Eigen::VectorXi::Constant(d, 1));
    for (int k = 0; k < d; ++k) {
        double m = j - k;
        jz.insert(k, k) = m;
        // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at index k-1
        if (k > 0) jp.insert(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    SparseMat jm = jp.adjoint();

    alg.jz = Operator(jz);
    alg.jplus = Operator(jp);
    alg.jminus = Operator(jm);
    alg.jx = Operator(SparseMat(0.5 * (jp + jm)));
    alg.jy = Operator(SparseMat(cplx(0.0, -0.5) * (jp - jm)));
    alg.jz.mark_hermitian();
    alg.jx.mark_hermitian();
    alg.jy.mark_hermitian();
    return alg;
}

cplx expectation(const Operator& op, const DenseMat& rho) {
    if (op.dim() != rho.rows() || rho.rows() != rho.cols())
        throw DimensionError("expectation: dimension mismatch");
    // tr(A rho) = sum_ij A_ij rho_ji
    if (op.is_sparse()) {
        const SparseMat& s = op.sparse_storage();
        cplx acc = 0.0;
        for (int c = 0; c < s.outerSize(); ++c)
            for (SparseMat::InnerIterator it(s, c); it; ++it) acc += it.value() * rho(c, it.row());
        return acc;
    }
    return (op.dense_storage().cwiseProduct(rho.transpose())).sum();
}

cplx expectation(const Operator& op, const DensityMatrix& rho) { return expectation(op, rho.matrix()); }

}  // namespace dlmg
