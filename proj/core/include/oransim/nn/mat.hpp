#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace oransim::nn {

/// Dense row-major matrix. Batches ride in rows, so every kernel below walks
/// contiguous memory.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  double* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(int i) const {
    return a.data() + static_cast<std::size_t>(i) * cols;
  }
  double& at(int i, int j) { return row(i)[j]; }
  double at(int i, int j) const { return row(i)[j]; }

  std::size_t size() const { return a.size(); }
  void zero() { a.assign(a.size(), 0.0); }
  bool same_shape(const Mat& o) const {
    return rows == o.rows && cols == o.cols;
  }

  bool operator==(const Mat&) const = default;
};

/// C += A * B
void gemm_nn(const Mat& A, const Mat& B, Mat& C);
/// C += A * B^T
void gemm_nt(const Mat& A, const Mat& B, Mat& C);
/// C += A^T * B
void gemm_tn(const Mat& A, const Mat& B, Mat& C);

/// M[i,:] += bias for every row.
void add_bias_rows(Mat& M, const Mat& bias);
/// bias += column sums of M.
void colsum_acc(const Mat& M, Mat& bias);

}  // namespace oransim::nn
