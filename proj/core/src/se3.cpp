#include "liecf/se3.hpp"

#include <cmath>

namespace liecf::se3 {

namespace {

const double kSqrt2 = std::sqrt(2.0);
constexpr double kSmallAngle = 1e-6;
constexpr double kPiMargin = 1e-6;

// Rotation block of an algebra element as a physical rotation vector.
Vec3 rotation_vector(const Mat4& M) {
  return Vec3(M(2, 1), M(0, 2), M(1, 0));
}

}  // namespace

Mat3 skew(const Vec3& w) {
  Mat3 W;
  W << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), w.x(), 0.0;
  return W;
}

const BasisSet& basis() {
  static const BasisSet b = [] {
    std::vector<Eigen::MatrixXd> els;
    for (int i = 0; i < 3; ++i) {
      Mat4 B = Mat4::Zero();
      B.topLeftCorner<3, 3>() = skew(Vec3::Unit(i)) / kSqrt2;
      els.push_back(B);
    }
    for (int i = 0; i < 3; ++i) {
      Mat4 B = Mat4::Zero();
      B(i, 3) = 1.0;
      els.push_back(B);
    }
    return BasisSet(els);
  }();
  return b;
}

Mat4 hat(const Vec6& a) {
  Mat4 M = Mat4::Zero();
  M.topLeftCorner<3, 3>() = skew(a.head<3>()) / kSqrt2;
  M.topRightCorner<3, 1>() = a.tail<3>();
  return M;
}

Vec6 vee(const Mat4& M) {
  const Mat3 W = 0.5 * (M.topLeftCorner<3, 3>() - M.topLeftCorner<3, 3>().transpose());
  Vec6 a;
  a.head<3>() = kSqrt2 * Vec3(W(2, 1), W(0, 2), W(1, 0));
  a.tail<3>() = M.topRightCorner<3, 1>();
  return a;
}

Mat4 project(const Mat4& M) {
  Mat4 P = Mat4::Zero();
  P.topLeftCorner<3, 3>() =
      0.5 * (M.topLeftCorner<3, 3>() - M.topLeftCorner<3, 3>().transpose());
  P.topRightCorner<3, 1>() = M.topRightCorner<3, 1>();
  return P;
}

Mat4 twist(const Vec3& omega, const Vec3& v) {
  Mat4 M = Mat4::Zero();
  M.topLeftCorner<3, 3>() = skew(omega);
  M.topRightCorner<3, 1>() = v;
  return M;
}

Vec6 coords_from_twist(const Vec3& omega, const Vec3& v) {
  Vec6 a;
  a.head<3>() = kSqrt2 * omega;
  a.tail<3>() = v;
  return a;
}

void twist_from_algebra(const Mat4& M, Vec3& omega, Vec3& v) {
  omega = rotation_vector(M);
  v = M.topRightCorner<3, 1>();
}

Mat4 exp(const Mat4& M) {
  const Vec3 w = rotation_vector(M);
  const Vec3 v = M.topRightCorner<3, 1>();
  const double th = w.norm();
  const Mat3 W = skew(w);
  const Mat3 W2 = W * W;

  double A, B, C;  // sin(th)/th, (1-cos th)/th^2, (th-sin th)/th^3
  if (th < kSmallAngle) {
    const double th2 = th * th;
    A = 1.0 - th2 / 6.0 + th2 * th2 / 120.0;
    B = 0.5 - th2 / 24.0 + th2 * th2 / 720.0;
    C = 1.0 / 6.0 - th2 / 120.0 + th2 * th2 / 5040.0;
  } else {
    const double th2 = th * th;
    A = std::sin(th) / th;
    B = (1.0 - std::cos(th)) / th2;
    C = (th - std::sin(th)) / (th2 * th);
  }

  Mat4 T = Mat4::Identity();
  T.topLeftCorner<3, 3>() = Mat3::Identity() + A * W + B * W2;
  T.topRightCorner<3, 1>() = (Mat3::Identity() + B * W + C * W2) * v;
  return T;
}

Mat4 log(const Mat4& T) {
  const Mat3 R = T.topLeftCorner<3, 3>();
  const Vec3 wbar = 0.5 * Vec3(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
  const double c = 0.5 * (R.trace() - 1.0);
  const double th = std::atan2(wbar.norm(), c);

  Vec3 w;
  if (th < kSmallAngle) {
    const double th2 = th * th;
    w = wbar * (1.0 + th2 / 6.0 + 7.0 * th2 * th2 / 360.0);
  } else if (th < M_PI - 0.1) {
    w = wbar * (th / std::sin(th));
  } else {
    if (M_PI - th < kPiMargin) {
      throw BranchAmbiguityError("se3::log: rotation angle within 1e-6 of pi");
    }
    // Near pi the skew part is tiny; recover the axis from the symmetric part
    // n n^T = 1 + W^2/th^2 = (R + R^T - 2 cos(th) 1) / (2 (1 - cos(th))).
    const Mat3 S = (R + R.transpose() - 2.0 * c * Mat3::Identity()) / (2.0 * (1.0 - c));
    int k = 0;
    S.diagonal().maxCoeff(&k);
    Vec3 n;
    n[k] = std::sqrt(std::max(S(k, k), 0.0));
    for (int j = 0; j < 3; ++j) {
      if (j != k) n[j] = S(j, k) / n[k];
    }
    n.normalize();
    if (n.dot(wbar) < 0.0) n = -n;
    w = th * n;
  }

  const Mat3 W = skew(w);
  Mat3 Jinv;
  if (th < kSmallAngle) {
    const double th2 = th * th;
    Jinv = Mat3::Identity() - 0.5 * W + (1.0 / 12.0 + th2 / 720.0) * W * W;
  } else {
    const double c2 = 1.0 / (th * th) - 0.5 / (th * std::tan(0.5 * th));
    Jinv = Mat3::Identity() - 0.5 * W + c2 * W * W;
  }

  Mat4 M = Mat4::Zero();
  M.topLeftCorner<3, 3>() = W;
  M.topRightCorner<3, 1>() = Jinv * T.topRightCorner<3, 1>();
  return M;
}

Mat4 inverse(const Mat4& T) {
  Mat4 Ti = Mat4::Identity();
  const Mat3 Rt = T.topLeftCorner<3, 3>().transpose();
  Ti.topLeftCorner<3, 3>() = Rt;
  Ti.topRightCorner<3, 1>() = -Rt * T.topRightCorner<3, 1>();
  return Ti;
}

double rotation_defect(const Mat4& T) {
  const Mat3 R = T.topLeftCorner<3, 3>();
  return (R.transpose() * R - Mat3::Identity()).norm();
}

bool is_group_element(const Mat4& T, double tol) {
  if (rotation_defect(T) > tol) return false;
  if (std::abs(T.topLeftCorner<3, 3>().determinant() - 1.0) > tol) return false;
  const Eigen::RowVector4d last = T.row(3);
  return (last - Eigen::RowVector4d(0, 0, 0, 1)).norm() <= tol;
}

Mat4 project_to_group(const Mat4& T) {
  Eigen::JacobiSVD<Mat3> svd(T.topLeftCorner<3, 3>(),
                             Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() < 0.0) {
    Mat3 U = svd.matrixU();
    U.col(2) *= -1.0;
    R = U * svd.matrixV().transpose();
  }
  Mat4 out = Mat4::Identity();
  out.topLeftCorner<3, 3>() = R;
  out.topRightCorner<3, 1>() = T.topRightCorner<3, 1>();
  return out;
}

double rotation_angle(const Mat4& T) {
  const Mat3 R = T.topLeftCorner<3, 3>();
  const Vec3 wbar = 0.5 * Vec3(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
  return std::atan2(wbar.norm(), 0.5 * (R.trace() - 1.0));
}

LandmarkSet::LandmarkSet(std::vector<Vec4> refs) : refs_(std::move(refs)) {
  if (refs_.size() < 3) {
    throw DegenerateLandmarkError("LandmarkSet: need at least three landmarks");
  }
  Eigen::MatrixXd stacked(4, static_cast<Eigen::Index>(refs_.size()));
  for (size_t j = 0; j < refs_.size(); ++j) {
    if (std::abs(refs_[j][3] - 1.0) > 1e-9) {
      throw ArgumentError("LandmarkSet: homogeneous component must be 1");
    }
    refs_[j][3] = 1.0;
    stacked.col(static_cast<Eigen::Index>(j)) = refs_[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > 1e-9 * sv[0]) ++rank;
  }
  if (rank < 3) {
    throw DegenerateLandmarkError("LandmarkSet: landmarks are affinely dependent");
  }
}

LandmarkSet LandmarkSet::unit_axes() {
  return LandmarkSet({Vec4(1, 0, 0, 1), Vec4(0, 1, 0, 1), Vec4(0, 0, 1, 1)});
}

std::vector<Vec4> measure(const Mat4& T, const LandmarkSet& refs,
                          const std::vector<Vec6>& noise) {
  if (noise.size() != static_cast<size_t>(refs.size())) {
    throw ArgumentError("measure: one noise vector required per landmark");
  }
  const Mat4 Tinv = inverse(T);
  std::vector<Vec4> y(static_cast<size_t>(refs.size()));
  for (int j = 0; j < refs.size(); ++j) {
    const Mat4 Ninv = inverse(exp(hat(noise[static_cast<size_t>(j)])));
    y[static_cast<size_t>(j)] = Tinv * (Ninv * refs.ref(j));
    y[static_cast<size_t>(j)][3] = 1.0;
  }
  return y;
}

std::vector<Vec4> measure(const Mat4& T, const LandmarkSet& refs) {
  return measure(T, refs, std::vector<Vec6>(static_cast<size_t>(refs.size()), Vec6::Zero()));
}

double cost_f(const Mat4& That, const std::vector<Vec4>& y, const LandmarkSet& refs) {
  if (y.size() != static_cast<size_t>(refs.size())) {
    throw ArgumentError("cost_f: measurement count does not match landmark count");
  }
  const Mat4 Ti = inverse(That);
  double f = 0.0;
  for (int j = 0; j < refs.size(); ++j) {
    f += (Ti * refs.ref(j) - y[static_cast<size_t>(j)]).squaredNorm();
  }
  return 0.5 * f;
}

Vec6 gradient_coords(const Mat4& That, const std::vector<Vec4>& y, const LandmarkSet& refs) {
  if (y.size() != static_cast<size_t>(refs.size())) {
    throw ArgumentError("gradient_coords: measurement count does not match landmark count");
  }
  const Mat4 Ti = inverse(That);
  const Mat4 Tit = Ti.transpose();
  Mat4 S = Mat4::Zero();
  for (int j = 0; j < refs.size(); ++j) {
    const Vec4 q = Ti * refs.ref(j) - y[static_cast<size_t>(j)];
    S.noalias() += Tit * (q * refs.ref(j).transpose());
  }
  return vee(-project(S));
}

Mat6 linearize_M1(const LandmarkSet& refs, double step) {
  const std::vector<Vec4> y0 = measure(Mat4::Identity(), refs);
  Mat6 M;
  for (int i = 0; i < 6; ++i) {
    const Vec6 d = Vec6::Unit(i);
    const Vec6 ep = gradient_coords(exp(hat(step * d)), y0, refs);
    const Vec6 em = gradient_coords(exp(hat(-step * d)), y0, refs);
    M.col(i) = (ep - em) / (2.0 * step);
  }
  M = 0.5 * (M + M.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Mat6> eig(M);
  if (eig.eigenvalues().minCoeff() < 1e-8) {
    throw DegenerateLandmarkError("linearize_M1: gain matrix is not positive definite");
  }
  return M;
}

}  // namespace liecf::se3
