#include "liecf/lti.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace liecf {

namespace {

constexpr int kSweepPoints = 2000;
constexpr double kSweepLo = 1e-4;
constexpr double kSweepHi = 1e6;

Eigen::VectorXd trim_leading(const Eigen::VectorXd& p) {
  if (p.size() == 0) return p;
  const double scale = p.cwiseAbs().maxCoeff();
  Eigen::Index start = 0;
  while (start < p.size() - 1 && std::abs(p[start]) <= 1e-12 * scale) ++start;
  return p.tail(p.size() - start);
}

Eigen::VectorXd polymul(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

// a + b with right (low-order) alignment.
Eigen::VectorXd polyadd(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = std::max(a.size(), b.size());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  c.tail(a.size()) += a;
  c.tail(b.size()) += b;
  return c;
}

std::complex<double> polyeval(const Eigen::VectorXd& p, std::complex<double> s) {
  std::complex<double> r = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) r = r * s + p[i];
  return r;
}

}  // namespace

TransferFunction::TransferFunction(Eigen::VectorXd numerator, Eigen::VectorXd denominator)
    : num(trim_leading(std::move(numerator))), den(std::move(denominator)) {
  if (den.size() == 0 || den.cwiseAbs().maxCoeff() == 0.0) {
    throw ArgumentError("TransferFunction: empty or zero denominator");
  }
  den = trim_leading(den);
  if (std::abs(den[0]) <= 1e-12 * den.cwiseAbs().maxCoeff()) {
    throw ArgumentError("TransferFunction: zero leading denominator coefficient");
  }
  if (num.size() > den.size()) {
    throw ArgumentError("TransferFunction: improper (numerator degree exceeds denominator)");
  }
}

std::complex<double> TransferFunction::eval(std::complex<double> s) const {
  return polyeval(num, s) / polyeval(den, s);
}

TransferFunction TransferFunction::normalized() const {
  return TransferFunction(num / den[0], den / den[0]);
}

StateSpace::StateSpace(Eigen::MatrixXd A_, Eigen::MatrixXd B_, Eigen::MatrixXd C_,
                       Eigen::MatrixXd D_)
    : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), D(std::move(D_)) {
  if (A.rows() != A.cols() || B.rows() != A.rows() || C.cols() != A.cols() ||
      D.rows() != C.rows() || D.cols() != B.cols()) {
    throw ArgumentError("StateSpace: inconsistent matrix dimensions");
  }
  x = Eigen::VectorXd::Zero(A.rows());
}

Eigen::MatrixXcd StateSpace::freq_response(double w) const {
  if (order() == 0) return D.cast<std::complex<double>>();
  const std::complex<double> jw(0.0, w);
  Eigen::MatrixXcd resolvent =
      (jw * Eigen::MatrixXcd::Identity(order(), order()) - A.cast<std::complex<double>>())
          .partialPivLu()
          .solve(B.cast<std::complex<double>>());
  return C.cast<std::complex<double>>() * resolvent + D.cast<std::complex<double>>();
}

StateSpace tf_to_ss(const TransferFunction& tf) {
  const TransferFunction f = tf.normalized();
  const int n = f.degree();

  double d = 0.0;
  Eigen::VectorXd rem = f.num;
  if (f.num.size() == f.den.size()) {
    d = f.num[0];
    rem = trim_leading(polyadd(f.num, -d * f.den));
    if (rem.size() == 1 && rem[0] == 0.0) rem.resize(0);
  }
  // rem now holds the strictly proper numerator, length <= n.

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  if (n > 1) A.topRightCorner(n - 1, n - 1).setIdentity();
  for (int i = 0; i < n; ++i) {
    A(n - 1, i) = -f.den[n - i];  // ascending-power row of the companion form
  }
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, 1);
  if (n > 0) B(n - 1, 0) = 1.0;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(1, n);
  for (Eigen::Index i = 0; i < rem.size(); ++i) {
    C(0, rem.size() - 1 - i) = rem[i];
  }
  Eigen::MatrixXd D(1, 1);
  D(0, 0) = d;
  return StateSpace(A, B, C, D);
}

bool is_hurwitz(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw ArgumentError("is_hurwitz: matrix must be square");
  if (A.rows() == 0) return true;
  const Eigen::EigenSolver<Eigen::MatrixXd> eig(A, false);
  return (eig.eigenvalues().real().array() < -1e-10).all();
}

SprReport spr_check(const StateSpace& ss) {
  if (ss.D.size() > 0 && ss.D.cwiseAbs().maxCoeff() > 0.0) {
    throw ArgumentError("spr_check: system must be strictly proper (D = 0)");
  }
  SprReport rep;
  rep.hurwitz = is_hurwitz(ss.A);

  double worst = std::numeric_limits<double>::infinity();
  double worst_w = kSweepLo;
  std::array<double, 3> tail{};
  const double logstep = std::log10(kSweepHi / kSweepLo) / (kSweepPoints - 1);
  for (int k = 0; k < kSweepPoints; ++k) {
    const double w = kSweepLo * std::pow(10.0, logstep * k);
    const Eigen::MatrixXcd H = ss.freq_response(w);
    const Eigen::MatrixXcd Hh = H + H.adjoint();
    const double m = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(Hh, Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .minCoeff();
    if (m < worst) {
      worst = m;
      worst_w = w;
    }
    if (k >= kSweepPoints - 3) tail[static_cast<size_t>(k - (kSweepPoints - 3))] = w * w * m;
  }
  rep.worst_margin = worst;
  rep.worst_freq = worst_w;
  rep.sweep_positive = worst > 0.0;
  rep.tail = tail;
  rep.tail_positive = tail[0] > 0.0 && tail[1] > 0.0 && tail[2] > 0.0 &&
                      tail[1] >= tail[0] * (1.0 - 1e-6) && tail[2] >= tail[1] * (1.0 - 1e-6);
  return rep;
}

TransferFunction make_notch(double w0, double depth, double width) {
  if (w0 <= 0.0 || depth <= 0.0 || width <= 0.0) {
    throw ArgumentError("make_notch: frequency, depth and width must be positive");
  }
  Eigen::Vector3d num(1.0, depth * width, w0 * w0);
  Eigen::Vector3d den(1.0, width, w0 * w0);
  return TransferFunction(num, den);
}

TransferFunction notch_design(const TransferFunction& base, const TransferFunction& notch) {
  // S_base = s d2 / (s d2 + n2); the reshaped sensitivity S = S_base * M must
  // equal s / (s + H3), which solves to H3 = ((s d2 + n2) dm - s d2 nm) / (d2 nm).
  const Eigen::VectorXd s = (Eigen::VectorXd(2) << 1.0, 0.0).finished();
  const Eigen::VectorXd sd2 = polymul(s, base.den);
  const Eigen::VectorXd num =
      polyadd(polymul(polyadd(sd2, base.num), notch.den), -polymul(sd2, notch.num));
  const Eigen::VectorXd den = polymul(base.den, notch.num);
  const Eigen::VectorXd tnum = trim_leading(num);
  const Eigen::VectorXd tden = trim_leading(den);
  if (tnum.size() > tden.size()) {
    throw DesignError("notch_design: reshaped filter is improper");
  }
  return TransferFunction(tnum, tden).normalized();
}

StateSpace mimo_lift(const StateSpace& scalar, const Mat6& M1) {
  if (scalar.inputs() != 1 || scalar.outputs() != 1) {
    throw ArgumentError("mimo_lift: scalar system must be SISO");
  }
  if ((M1 - M1.transpose()).norm() > 1e-9) {
    throw ArgumentError("mimo_lift: M1 must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Mat6> eig(M1, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 1e-12) {
    throw ArgumentError("mimo_lift: M1 must be positive definite");
  }
  const Mat6 M1inv = M1.inverse();
  const Eigen::MatrixXd I6 = Eigen::MatrixXd::Identity(6, 6);
  Eigen::MatrixXd A = Eigen::kroneckerProduct(I6, scalar.A);
  Eigen::MatrixXd B = Eigen::kroneckerProduct(M1inv, scalar.B);
  Eigen::MatrixXd C = Eigen::kroneckerProduct(I6, scalar.C);
  Eigen::MatrixXd D = scalar.D(0, 0) * M1inv;
  return StateSpace(A, B, C, D);
}

Eigen::VectorXd ss_step(StateSpace& ss, const Eigen::VectorXd& e, double dt) {
  if (dt <= 0.0) throw ArgumentError("ss_step: dt must be positive");
  if (e.size() != ss.inputs()) throw ArgumentError("ss_step: input dimension mismatch");
  if (ss.order() > 0) {
    const Eigen::VectorXd Be = ss.B * e;
    const Eigen::VectorXd k1 = ss.A * ss.x + Be;
    const Eigen::VectorXd k2 = ss.A * (ss.x + 0.5 * dt * k1) + Be;
    const Eigen::VectorXd k3 = ss.A * (ss.x + 0.5 * dt * k2) + Be;
    const Eigen::VectorXd k4 = ss.A * (ss.x + dt * k3) + Be;
    ss.x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return ss.C * ss.x + ss.D * e;
  }
  return ss.D * e;
}

namespace designs {

TransferFunction h1() {
  return TransferFunction(Eigen::VectorXd::Constant(1, 2.0), Eigen::VectorXd::Constant(1, 1.0));
}

TransferFunction h2() {
  return TransferFunction(Eigen::VectorXd::Constant(1, 9.7),
                          (Eigen::VectorXd(2) << 1.0, 6.2).finished());
}

TransferFunction notch_m() { return make_notch(0.2 * M_PI); }

TransferFunction h3() { return notch_design(h2(), notch_m()); }

}  // namespace designs

}  // namespace liecf
