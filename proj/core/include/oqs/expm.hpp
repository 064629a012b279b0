#pragma once

#include "oqs/types.hpp"

namespace oqs {

namespace detail {

/// Scaling-and-squaring matrix exponential (Pade approximants of degree
/// 3/5/7/9/13 selected by the 1-norm, Higham's thresholds) with reusable
/// buffers so hot loops do not allocate. One workspace per thread.
template <typename Mat>
class ExpmWorkspace {
  public:
    void compute(const Mat& a, Mat& out);

  private:
    void pade(const Mat& a, int degree, Mat& out);
    Mat a2_, a4_, a6_, a8_, u_, v_, w_, num_, den_, scaled_;
    Eigen::PartialPivLU<Mat> lu_;
};

extern template class ExpmWorkspace<Matrix>;
extern template class ExpmWorkspace<RealMatrix>;

}  // namespace detail

/// Dense matrix exponential, complex and real flavors.
Matrix expm(const Matrix& a);
RealMatrix expm(const RealMatrix& a);

}  // namespace oqs
