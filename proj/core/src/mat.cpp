#include "oransim/nn/mat.hpp"

namespace oransim::nn {

void gemm_nn(const Mat& A, const Mat& B, Mat& C) {
  assert(A.cols == B.rows && A.rows == C.rows && B.cols == C.cols);
  const int m = A.rows, k = A.cols, n = B.cols;
  for (int i = 0; i < m; ++i) {
    const double* arow = A.row(i);
    double* crow = C.row(i);
    for (int p = 0; p < k; ++p) {
      const double aip = arow[p];
      if (aip == 0.0) continue;
      const double* brow = B.row(p);
      for (int j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void gemm_nt(const Mat& A, const Mat& B, Mat& C) {
  assert(A.cols == B.cols && A.rows == C.rows && B.rows == C.cols);
  const int m = A.rows, k = A.cols, n = B.rows;
  for (int i = 0; i < m; ++i) {
    const double* arow = A.row(i);
    double* crow = C.row(i);
    for (int j = 0; j < n; ++j) {
      const double* brow = B.row(j);
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] += acc;
    }
  }
}

void gemm_tn(const Mat& A, const Mat& B, Mat& C) {
  assert(A.rows == B.rows && A.cols == C.rows && B.cols == C.cols);
  const int t = A.rows, m = A.cols, n = B.cols;
  for (int i = 0; i < t; ++i) {
    const double* arow = A.row(i);
    const double* brow = B.row(i);
    for (int p = 0; p < m; ++p) {
      const double api = arow[p];
      if (api == 0.0) continue;
      double* crow = C.row(p);
      for (int j = 0; j < n; ++j) crow[j] += api * brow[j];
    }
  }
}

void add_bias_rows(Mat& M, const Mat& bias) {
  assert(bias.rows == 1 && bias.cols == M.cols);
  const double* b = bias.row(0);
  for (int i = 0; i < M.rows; ++i) {
    double* row = M.row(i);
    for (int j = 0; j < M.cols; ++j) row[j] += b[j];
  }
}

void colsum_acc(const Mat& M, Mat& bias) {
  assert(bias.rows == 1 && bias.cols == M.cols);
  double* b = bias.row(0);
  for (int i = 0; i < M.rows; ++i) {
    const double* row = M.row(i);
    for (int j = 0; j < M.cols; ++j) b[j] += row[j];
  }
}

}  // namespace oransim::nn
