#pragma once

#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace hardy {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cplx>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// largest singular value, 0 for empty
double opnorm(const Mat& a);
double opnorm(const SpMat& a);

Mat adj(const Mat& a);
Mat hermitian_part(const Mat& a);

// eigenvalues in [-clip, 0) are set to 0, anything lower throws
Mat psd_sqrt(const Mat& a, double clip = 1e-12);

// (a)^{+1/2} on the support, eigenvalues below thresh dropped
Mat psd_pinv_sqrt(const Mat& a, double thresh);

Mat pinv(const Mat& a, double thresh = 1e-10);

// orthonormal columns spanning the kernel / range
Mat null_space(const Mat& a, double thresh = 1e-10);
Mat orth(const Mat& a, double thresh = 1e-10);

// columns of b orthonormalized against q (two passes), then among themselves
Mat orth_complement_frame(const Mat& q, const Mat& b, double thresh = 1e-10);

double min_eig_herm(const Mat& a);

Mat block_diag(const std::vector<Mat>& blocks);
Mat kron(const Mat& a, const Mat& b);

SpMat to_sparse(const Mat& a, double drop = 0.0);

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  cplx cnormal();
  int integer(int lo, int hi);  // inclusive
  Mat cmat(int r, int c);
  Vec cvec(int n);
  Mat psd(int n);
  Mat unitary(int n);
};

}  // namespace hardy
