#include "bergman/basis.hpp"

#include <cmath>
#include <string>

#include "bergman/errors.hpp"

namespace bergman {

MonomialBasis::MonomialBasis(std::size_t n, int max_degree) : n_(n), d_(max_degree) {
  if (n == 0) throw DomainError("MonomialBasis: dimension must be >= 1");
  if (max_degree < 0) throw DomainError("MonomialBasis: max_degree must be >= 0");
  size_ = 1;
  for (std::size_t l = 0; l < n; ++l) size_ *= static_cast<std::size_t>(max_degree + 1);
}

std::vector<int> MonomialBasis::multi_index(std::size_t flat) const {
  std::vector<int> a(n_);
  for (std::size_t l = n_; l-- > 0;) {
    a[l] = static_cast<int>(flat % static_cast<std::size_t>(d_ + 1));
    flat /= static_cast<std::size_t>(d_ + 1);
  }
  return a;
}

std::size_t MonomialBasis::flat_index(std::span<const int> alpha) const {
  if (alpha.size() != n_) throw DomainError("MonomialBasis: multi-index has wrong length");
  std::size_t f = 0;
  for (int a : alpha) {
    if (a < 0 || a > d_) throw DomainError("MonomialBasis: multi-index out of range");
    f = f * static_cast<std::size_t>(d_ + 1) + static_cast<std::size_t>(a);
  }
  return f;
}

Vec MonomialBasis::eval_axis(cplx w) const {
  Vec v(d_ + 1);
  cplx p = 1.0;
  for (int k = 0; k <= d_; ++k) {
    v[k] = std::sqrt(static_cast<double>(k + 1)) * p;
    p *= w;
  }
  return v;
}

Vec MonomialBasis::eval(std::span<const cplx> z) const {
  if (z.size() != n_) {
    throw DomainError("MonomialBasis: point has dimension " + std::to_string(z.size()) + ", expected " +
                      std::to_string(n_));
  }
  Vec out = eval_axis(z[0]);
  for (std::size_t l = 1; l < n_; ++l) {
    const Vec ax = eval_axis(z[l]);
    Vec next(out.size() * ax.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * ax.size(), ax.size()) = out[i] * ax;
    out = std::move(next);
  }
  return out;
}

TruncatedOperator::TruncatedOperator(MonomialBasis b, Mat m) : basis(std::move(b)), matrix(std::move(m)) {
  const auto s = static_cast<Eigen::Index>(basis.size());
  if (matrix.rows() != s || matrix.cols() != s) {
    throw DomainError("TruncatedOperator: matrix is " + std::to_string(matrix.rows()) + "x" +
                      std::to_string(matrix.cols()) + ", basis has " + std::to_string(s) + " elements");
  }
}

TruncatedOperator TruncatedOperator::identity(const MonomialBasis& b) {
  const auto s = static_cast<Eigen::Index>(b.size());
  return {b, Mat::Identity(s, s)};
}

TruncatedOperator TruncatedOperator::zero(const MonomialBasis& b) {
  const auto s = static_cast<Eigen::Index>(b.size());
  return {b, Mat::Zero(s, s)};
}

TruncatedOperator TruncatedOperator::adjoint() const { return {basis, matrix.adjoint()}; }

Vec TruncatedOperator::apply(const Vec& f) const {
  if (f.size() != matrix.cols()) throw DomainError("TruncatedOperator::apply: dimension mismatch");
  return matrix * f;
}

namespace {
void same_basis(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (!(a.basis == b.basis)) throw DomainError("TruncatedOperator: operands use different bases");
}
}  // namespace

TruncatedOperator TruncatedOperator::operator+(const TruncatedOperator& o) const {
  same_basis(*this, o);
  return {basis, matrix + o.matrix};
}

TruncatedOperator TruncatedOperator::operator-(const TruncatedOperator& o) const {
  same_basis(*this, o);
  return {basis, matrix - o.matrix};
}

TruncatedOperator TruncatedOperator::operator*(const TruncatedOperator& o) const {
  same_basis(*this, o);
  return {basis, matrix * o.matrix};
}

TruncatedOperator TruncatedOperator::operator*(cplx c) const { return {basis, matrix * c}; }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace bergman
