#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace crsurf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using cplx = std::complex<double>;

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularPointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModelGeometry;

// A validated point of a model chart. Angle coordinates are kept in [0, 2pi).
class ChartPoint {
 public:
  ChartPoint(const ModelGeometry& model, const Vec3& coords);

  const Vec3& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }

 private:
  Vec3 coords_;
};

// Tangent vector in the chart coordinate basis at a base point.
class TangentVector {
 public:
  TangentVector(const Vec3& base, const Vec3& components) : base_(base), v_(components) {}

  const Vec3& base() const { return base_; }
  const Vec3& components() const { return v_; }

  TangentVector operator+(const TangentVector& o) const;
  TangentVector operator-(const TangentVector& o) const;
  TangentVector operator*(double s) const { return {base_, v_ * s}; }

 private:
  Vec3 base_;
  Vec3 v_;
};

// (X, Y = JX, T) in chart components; orthonormal for the Levi metric.
struct Frame {
  Vec3 X, Y, T;

  Mat3 matrix() const {
    Mat3 m;
    m.col(0) = X;
    m.col(1) = Y;
    m.col(2) = T;
    return m;
  }
};

// Real connection form evaluated on the frame: omega(X), omega(Y), omega(T).
struct ConnectionForm {
  double onX = 0.0;
  double onY = 0.0;
  double onT = 0.0;
};

}  // namespace crsurf
