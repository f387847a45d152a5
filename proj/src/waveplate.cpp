#include "qspeed/waveplate.hpp"

#include <cmath>

namespace qspeed {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double mod_pi(double x) {
  double r = std::fmod(x, kPi);
  if (r < 0.0) r += kPi;
  return r;
}

CMatrix rot(double a) {
  CMatrix m(2, 2);
  m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return m;
}

// exp(-i a/2 sigma_y).
CMatrix exp_y(double a) { return rot(a / 2.0); }

// exp(-i a/2 sigma_x).
CMatrix exp_x(double a) {
  CMatrix m(2, 2);
  const double c = std::cos(a / 2.0), s = std::sin(a / 2.0);
  m << c, cplx(0, -s), cplx(0, -s), c;
  return m;
}

// Retarder with fast axis at angle theta and retardance phases d0, d1.
CMatrix retarder(double theta, cplx d0, cplx d1) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = d0;
  d(1, 1) = d1;
  return rot(theta) * d * rot(-theta);
}

// 45-degree frame map between the two conventions: R(pi/4) * sigma_y.
const CMatrix& frame_w() {
  static const CMatrix w = [] {
    CMatrix sy(2, 2);
    sy << 0, cplx(0, -1), cplx(0, 1), 0;
    return CMatrix(rot(kPi / 4.0) * sy);
  }();
  return w;
}

}  // namespace

const char* convention_name(JonesConvention c) {
  switch (c) {
    case JonesConvention::Diagonal: return "diagonal";
    case JonesConvention::Computational: return "computational";
  }
  throw ValidationError("invalid JonesConvention value");
}

JonesConvention convention_from_name(const std::string& name) {
  if (name == "diagonal" || name == "da") return JonesConvention::Diagonal;
  if (name == "computational" || name == "hv")
    return JonesConvention::Computational;
  throw ValidationError("unknown Jones convention '" + name +
                        "' (expected diagonal|computational)");
}

CMatrix qwp(double theta, JonesConvention conv) {
  if (conv == JonesConvention::Computational) {
    return retarder(theta, 1.0, cplx(0, 1));
  }
  // Symmetric physical phases exp(-/+ i pi/4), expressed in the rotated frame.
  const cplx d0 = std::exp(cplx(0, -kPi / 4.0));
  const cplx d1 = std::exp(cplx(0, kPi / 4.0));
  return frame_w().adjoint() * retarder(theta, d0, d1) * frame_w();
}

CMatrix hwp(double theta, JonesConvention conv) {
  if (conv == JonesConvention::Computational) {
    return retarder(theta, 1.0, -1.0);
  }
  return frame_w().adjoint() * retarder(theta, 1.0, -1.0) * frame_w();
}

CMatrix euler_unitary(const EulerAngles& e) {
  return exp_y(e.xi) * exp_x(e.eta) * exp_y(e.zeta);
}

WaveplateSequence decompose(const EulerAngles& e, JonesConvention conv) {
  WaveplateSequence seq;
  if (conv == JonesConvention::Computational) {
    seq.theta1 = mod_pi(-e.zeta / 2.0);
    seq.theta2 = mod_pi((e.xi - e.eta - e.zeta) / 4.0);
    seq.theta3 = mod_pi(e.xi / 2.0);
  } else {
    seq.theta1 = mod_pi(kPi / 4.0 - e.zeta / 2.0);
    seq.theta2 = mod_pi(-kPi / 4.0 + (e.xi + e.eta - e.zeta) / 4.0);
    seq.theta3 = mod_pi(kPi / 4.0 + e.xi / 2.0);
  }
  return seq;
}

CMatrix compose(const WaveplateSequence& seq, JonesConvention conv) {
  return qwp(seq.theta3, conv) * hwp(seq.theta2, conv) * qwp(seq.theta1, conv);
}

bool equal_up_to_phase(const CMatrix& a, const CMatrix& b, double tol) {
  require_unitary(a, 1e-8, "equal_up_to_phase a");
  require_unitary(b, 1e-8, "equal_up_to_phase b");
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;

  // Phase from the first row-major element of b that is clearly nonzero.
  const double scale = max_abs(b);
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (std::abs(b(i, j)) >= 0.5 * scale) {
        cplx phase = a(i, j) / b(i, j);
        const double mag = std::abs(phase);
        if (mag < 1e-12) return false;
        phase /= mag;
        return max_abs(a - phase * b) <= tol;
      }
    }
  }
  return false;
}

}  // namespace qspeed
