#include "oqs/expm.hpp"

#include <cmath>

namespace oqs {
namespace detail {

namespace {

// Pade numerator coefficients b_0..b_m per degree (Higham 2005).
const double kB3[] = {120.0, 60.0, 12.0, 1.0};
const double kB5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
const double kB7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                      25200.0,    1512.0,    56.0,      1.0};
const double kB9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                      30270240.0,    2162160.0,    110880.0,     3960.0,
                      90.0,          1.0};
const double kB13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                       1187353796428800.0,  129060195264000.0,   10559470521600.0,
                       670442572800.0,      33522128640.0,       1323241920.0,
                       40840800.0,          960960.0,            16380.0,
                       182.0,               1.0};

// 1-norm thresholds below which the corresponding degree is accurate.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068;
constexpr double kTheta13 = 5.371920351148152;

template <typename Mat>
double one_norm(const Mat& a) {
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

template <typename Mat>
void ExpmWorkspace<Mat>::pade(const Mat& a, int degree, Mat& out) {
    const Eigen::Index d = a.rows();
    a2_.noalias() = a * a;
    switch (degree) {
        case 3: {
            const double* b = kB3;
            u_ = b[3] * a2_;
            u_.diagonal().array() += b[1];
            w_.noalias() = a * u_;
            u_.swap(w_);
            v_ = b[2] * a2_;
            v_.diagonal().array() += b[0];
            break;
        }
        case 5: {
            const double* b = kB5;
            a4_.noalias() = a2_ * a2_;
            u_ = b[5] * a4_ + b[3] * a2_;
            u_.diagonal().array() += b[1];
            w_.noalias() = a * u_;
            u_.swap(w_);
            v_ = b[4] * a4_ + b[2] * a2_;
            v_.diagonal().array() += b[0];
            break;
        }
        case 7: {
            const double* b = kB7;
            a4_.noalias() = a2_ * a2_;
            a6_.noalias() = a2_ * a4_;
            u_ = b[7] * a6_ + b[5] * a4_ + b[3] * a2_;
            u_.diagonal().array() += b[1];
            w_.noalias() = a * u_;
            u_.swap(w_);
            v_ = b[6] * a6_ + b[4] * a4_ + b[2] * a2_;
            v_.diagonal().array() += b[0];
            break;
        }
        case 9: {
            const double* b = kB9;
            a4_.noalias() = a2_ * a2_;
            a6_.noalias() = a2_ * a4_;
            a8_.noalias() = a4_ * a4_;
            u_ = b[9] * a8_ + b[7] * a6_ + b[5] * a4_ + b[3] * a2_;
            u_.diagonal().array() += b[1];
            w_.noalias() = a * u_;
            u_.swap(w_);
            v_ = b[8] * a8_ + b[6] * a6_ + b[4] * a4_ + b[2] * a2_;
            v_.diagonal().array() += b[0];
            break;
        }
        default: {  // 13, economical evaluation
            const double* b = kB13;
            a4_.noalias() = a2_ * a2_;
            a6_.noalias() = a2_ * a4_;
            w_ = b[13] * a6_ + b[11] * a4_ + b[9] * a2_;
            num_.noalias() = a6_ * w_;
            num_ += b[7] * a6_ + b[5] * a4_ + b[3] * a2_;
            num_.diagonal().array() += b[1];
            u_.noalias() = a * num_;
            w_ = b[12] * a6_ + b[10] * a4_ + b[8] * a2_;
            v_.noalias() = a6_ * w_;
            v_ += b[6] * a6_ + b[4] * a4_ + b[2] * a2_;
            v_.diagonal().array() += b[0];
            break;
        }
    }
    den_ = v_ - u_;
    num_ = v_ + u_;
    lu_.compute(den_);
    out.resize(d, d);
    out.noalias() = lu_.solve(num_);
}

template <typename Mat>
void ExpmWorkspace<Mat>::compute(const Mat& a, Mat& out) {
    const double nrm = one_norm(a);
    if (nrm <= kTheta3) { pade(a, 3, out); return; }
    if (nrm <= kTheta5) { pade(a, 5, out); return; }
    if (nrm <= kTheta7) { pade(a, 7, out); return; }
    if (nrm <= kTheta9) { pade(a, 9, out); return; }
    int squarings = 0;
    if (nrm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
    scaled_ = a * std::ldexp(1.0, -squarings);
    pade(scaled_, 13, out);
    for (int s = 0; s < squarings; ++s) {
        w_.noalias() = out * out;
        out.swap(w_);
    }
}

template class ExpmWorkspace<Matrix>;
template class ExpmWorkspace<RealMatrix>;

}  // namespace detail

Matrix expm(const Matrix& a) {
    detail::ExpmWorkspace<Matrix> ws;
    Matrix out;
    ws.compute(a, out);
    return out;
}

RealMatrix expm(const RealMatrix& a) {
    detail::ExpmWorkspace<RealMatrix> ws;
    RealMatrix out;
    ws.compute(a, out);
    return out;
}

}  // namespace oqs
