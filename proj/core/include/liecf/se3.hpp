#pragma once

// Concrete SE(3) instance: the orthonormal 6-element basis, closed-form
// exponential/logarithm, the point-landmark measurement model, the
// right-invariant cost, its gradient in basis coordinates, and the
// first-order gain matrix of the gradient about identity.

#include <vector>

#include "liecf/algebra.hpp"
#include "liecf/errors.hpp"
#include "liecf/types.hpp"

namespace liecf::se3 {

/// 3x3 cross-product matrix of w.
Mat3 skew(const Vec3& w);

/// The orthonormal basis of se(3): rotational elements carry a 1/sqrt(2)
/// scaling so that trace(B_i^T B_j) = delta_ij. Built once, shared.
const BasisSet& basis();

/// hat for SE(3) basis coordinates (closed form, equals hat(basis(), a)).
/// Note the convention: a = [sqrt(2)*omega; v] for physical twist (omega, v).
Mat4 hat(const Vec6& a);

/// Inverse of hat on se(3) (closed form).
Vec6 vee(const Mat4& M);

/// Orthogonal projection of a 4x4 matrix onto se(3):
/// [[A, b],[c^T, d]] -> [[(A - A^T)/2, b],[0, 0]].
Mat4 project(const Mat4& M);

/// Raw algebra element [[skew(omega), v],[0, 0]] from a physical twist.
Mat4 twist(const Vec3& omega, const Vec3& v);

/// Basis coordinates of a physical twist: [sqrt(2)*omega; v].
Vec6 coords_from_twist(const Vec3& omega, const Vec3& v);

/// Physical twist of an algebra element.
void twist_from_algebra(const Mat4& M, Vec3& omega, Vec3& v);

/// Closed-form exponential, Rodrigues rotation plus left-Jacobian translation,
/// with series fallback below rotation angle 1e-6.
Mat4 exp(const Mat4& M);

/// Closed-form logarithm. Throws BranchAmbiguityError when the rotation angle
/// is within 1e-6 of pi.
Mat4 log(const Mat4& T);

/// Rigid inverse [[R^T, -R^T r],[0, 1]].
Mat4 inverse(const Mat4& T);

/// Frobenius distance of the rotation block from orthogonality, |R^T R - 1|_F.
double rotation_defect(const Mat4& T);

/// True iff T satisfies the group invariants: R^T R = 1 and det R = +1 within
/// tol, last row exactly [0 0 0 1] within tol.
bool is_group_element(const Mat4& T, double tol = 1e-9);

/// Re-project the rotation block onto SO(3) by polar decomposition; the
/// translation is kept and the last row reset. Used by the rk4-project scheme.
Mat4 project_to_group(const Mat4& T);

/// Rotation angle of the rotation block, in [0, pi]. Robust at pi.
double rotation_angle(const Mat4& T);

/**
 * Reference landmarks: homogeneous points with fourth component 1.
 * Requires at least three points that are affinely independent (the stacked
 * matrix of homogeneous columns has rank >= 3); otherwise the induced cost
 * cannot be an error function.
 */
class LandmarkSet {
 public:
  explicit LandmarkSet(std::vector<Vec4> refs);

  /// The unit-axis landmarks e_1, e_2, e_3 in homogeneous form.
  static LandmarkSet unit_axes();

  int size() const { return static_cast<int>(refs_.size()); }
  const Vec4& ref(int j) const { return refs_.at(static_cast<size_t>(j)); }
  const std::vector<Vec4>& refs() const { return refs_; }

 private:
  std::vector<Vec4> refs_;
};

/// One sensor epoch: landmark observations, measured group velocity (raw
/// algebra element, rad/s and m/s), and the sample time.
struct Measurement {
  std::vector<Vec4> y;
  Mat4 velocity = Mat4::Zero();
  double t = 0.0;
};

/// Landmark observations y_j = T^{-1} exp(hat(n_j))^{-1} ybar_j. The noise
/// list must have one 6-vector of basis coordinates per landmark.
std::vector<Vec4> measure(const Mat4& T, const LandmarkSet& refs,
                          const std::vector<Vec6>& noise);

/// Noise-free convenience overload.
std::vector<Vec4> measure(const Mat4& T, const LandmarkSet& refs);

/// Right-invariant cost 1/2 sum_j |That^{-1} ybar_j - y_j|^2.
double cost_f(const Mat4& That, const std::vector<Vec4>& y, const LandmarkSet& refs);

/// Basis coordinates of the cost gradient at That:
/// e = vee(-P(sum_j That^{-T} (That^{-1} ybar_j - y_j) ybar_j^T)).
/// Consumes only measurements, never the true pose.
Vec6 gradient_coords(const Mat4& That, const std::vector<Vec4>& y, const LandmarkSet& refs);

/// First-order gain of the gradient about identity: e ~ M1 * dx for
/// That = exp(hat(dx)) against noise-free measurements at T = 1. Computed by
/// central differences and symmetrized; throws DegenerateLandmarkError if the
/// result is not positive definite.
Mat6 linearize_M1(const LandmarkSet& refs, double step = 1e-5);

}  // namespace liecf::se3
