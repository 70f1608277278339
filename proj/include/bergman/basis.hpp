#pragma once

#include <Eigen/Dense>

#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Orthonormal monomials e_a(z) = prod_l sqrt(a_l + 1) z_l^a_l of A^2(D^n), 0 <= a_l <= D.
///
/// Flat indices put the last axis fastest, so an operator that factors over
/// axes is the Kronecker product of its one-variable factors in axis order.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(std::size_t n, int max_degree);

  std::size_t dim() const { return n_; }
  int max_degree() const { return d_; }
  std::size_t size() const { return size_; }

  std::vector<int> multi_index(std::size_t flat) const;
  std::size_t flat_index(std::span<const int> alpha) const;

  /// Vector (e_a(z))_a.
  Vec eval(std::span<const cplx> z) const;
  Vec eval(const PolyPoint& z) const { return eval(z.coords()); }
  /// One-variable values sqrt(k + 1) w^k, k = 0..D.
  Vec eval_axis(cplx w) const;

  friend bool operator==(const MonomialBasis&, const MonomialBasis&) = default;

 private:
  std::size_t n_ = 0;
  int d_ = 0;
  std::size_t size_ = 0;
};

/// Compression of an operator on A^2(D^n) to span{e_a}; entry (b, a) = <S e_a, e_b>.
struct TruncatedOperator {
  MonomialBasis basis;
  Mat matrix;

  TruncatedOperator() = default;
  TruncatedOperator(MonomialBasis b, Mat m);

  static TruncatedOperator identity(const MonomialBasis& b);
  static TruncatedOperator zero(const MonomialBasis& b);

  TruncatedOperator adjoint() const;
  Vec apply(const Vec& f) const;

  TruncatedOperator operator+(const TruncatedOperator& o) const;
  TruncatedOperator operator-(const TruncatedOperator& o) const;
  TruncatedOperator operator*(const TruncatedOperator& o) const;
  TruncatedOperator operator*(cplx c) const;
};

/// Kronecker product A (x) B.
Mat kron(const Mat& a, const Mat& b);

}  // namespace bergman
