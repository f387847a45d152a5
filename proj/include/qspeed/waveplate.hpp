#pragma once

#include <string>

#include "qspeed/cmatrix.hpp"

namespace qspeed {

// u(xi, eta, zeta) = exp(-i xi/2 sy) exp(-i eta/2 sx) exp(-i zeta/2 sy).
struct EulerAngles {
  double xi = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
};

// Plate angles (fast-axis orientations), reduced to [0, pi).
struct WaveplateSequence {
  double theta1 = 0.0;  // first quarter-wave plate
  double theta2 = 0.0;  // half-wave plate
  double theta3 = 0.0;  // second quarter-wave plate
};

// Two Jones-matrix conventions for the plates, differing by a fixed 45-degree
// rotation of the logical frame:
//   Computational: qwp(0) = diag(1, i), hwp(0) = diag(1, -1) (retardance on
//     the vertical axis); the synthesis map is theta1 = -zeta/2,
//     theta2 = (xi - eta - zeta)/4, theta3 = xi/2.
//   Diagonal (default): the same physical plates expressed in the frame
//     rotated by 45 degrees with symmetric retardance phases diag(e^{-i pi/4},
//     e^{+i pi/4}); the synthesis map is theta1 = pi/4 - zeta/2,
//     theta2 = -pi/4 + (xi + eta - zeta)/4, theta3 = pi/4 + xi/2, and the
//     all-pi/4 sequence composes to -i I.
// Both conventions satisfy compose(decompose(e)) = euler_unitary(e) up to a
// global phase for every e.
enum class JonesConvention { Diagonal, Computational };

const char* convention_name(JonesConvention c);
JonesConvention convention_from_name(const std::string& name);

CMatrix qwp(double theta, JonesConvention conv = JonesConvention::Diagonal);
CMatrix hwp(double theta, JonesConvention conv = JonesConvention::Diagonal);

CMatrix euler_unitary(const EulerAngles& e);

// Plate angles realizing u(e) in the given convention (up to global phase).
WaveplateSequence decompose(const EulerAngles& e,
                            JonesConvention conv = JonesConvention::Diagonal);

// qwp(theta3) * hwp(theta2) * qwp(theta1).
CMatrix compose(const WaveplateSequence& seq,
                JonesConvention conv = JonesConvention::Diagonal);

// True when a = e^{i phi} b for some phase, both unitary within tol.
bool equal_up_to_phase(const CMatrix& a, const CMatrix& b, double tol = 1e-9);

}  // namespace qspeed
