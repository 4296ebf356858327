#pragma once

#include <cstdint>
#include <string>

#include "qdl/complex_util.hpp"
#include "qdl/errors.hpp"

namespace qdl {

// The three Pontryagin self-dual groups the models live on:
//   R            spins on the real line
//   R x Z_N      real part plus an integer mod N
//   T x Z        angle on the unit circle plus an integer
enum class group_family { real_line, real_by_zn, circle_by_z };

class GroupKind {
 public:
  static GroupKind real_line() { return GroupKind(group_family::real_line, 0); }

  /// N >= 2 per the model definition; N = 1 is admitted only for the
  /// Faddeev-reduction oracle in tests.
  static GroupKind real_by_zn(int n, bool allow_test_n1 = false) {
    int min_n = allow_test_n1 ? 1 : 2;
    if (n < min_n) throw domain_error("real_by_zn: modulus must be >= 2");
    return GroupKind(group_family::real_by_zn, n);
  }

  static GroupKind circle_by_z() { return GroupKind(group_family::circle_by_z, 0); }

  group_family family() const { return fam_; }
  int modulus() const { return n_; }
  bool has_discrete() const { return fam_ != group_family::real_line; }

  bool operator==(const GroupKind& o) const { return fam_ == o.fam_ && n_ == o.n_; }
  bool operator!=(const GroupKind& o) const { return !(*this == o); }

  std::string name() const {
    switch (fam_) {
      case group_family::real_line: return "real";
      case group_family::real_by_zn: return "real-z" + std::to_string(n_);
      case group_family::circle_by_z: return "circle-z";
    }
    return "?";
  }

 private:
  GroupKind(group_family f, int n) : fam_(f), n_(n) {}
  group_family fam_;
  int n_;
};

/// An element of one of the three groups. The continuous component may be
/// complexified (analytic continuation); the discrete component is always an
/// integer, reduced mod N for R x Z_N.
class GroupPoint {
 public:
  GroupPoint() : kind_(GroupKind::real_line()), cont_(0.0), disc_(0) {}

  static GroupPoint real(cx x) { return GroupPoint(GroupKind::real_line(), x, 0); }

  static GroupPoint of(GroupKind kind, cx cont, long disc = 0) {
    return GroupPoint(kind, cont, disc);
  }

  GroupKind kind() const { return kind_; }
  cx cont() const { return cont_; }
  long disc() const { return disc_; }
  bool is_real() const { return cont_.imag() == 0.0; }

  GroupPoint operator+(const GroupPoint& o) const {
    check_same(o);
    return GroupPoint(kind_, cont_ + o.cont_, disc_ + o.disc_);
  }
  GroupPoint operator-(const GroupPoint& o) const {
    check_same(o);
    return GroupPoint(kind_, cont_ - o.cont_, disc_ - o.disc_);
  }
  GroupPoint operator-() const { return GroupPoint(kind_, -cont_, -disc_); }

  /// Shift of the continuous component only (analytic continuation; e.g. the
  /// crossing parameter eta added to a point).
  GroupPoint shifted(cx dc) const { return GroupPoint(kind_, cont_ + dc, disc_); }

  /// Halve the point. Discrete components must be even.
  GroupPoint half() const {
    if (kind_.has_discrete() && (disc_ % 2) != 0)
      throw domain_error("GroupPoint::half: odd discrete component");
    long d = kind_.has_discrete() ? disc_ / 2 : 0;
    return GroupPoint(kind_, cont_ / 2.0, d);
  }

  GroupPoint quarter() const { return half().half(); }

  void check_same(const GroupPoint& o) const {
    if (kind_ != o.kind_)
      throw group_mismatch("group mismatch: " + kind_.name() + " vs " + o.kind_.name());
  }

 private:
  GroupPoint(GroupKind kind, cx cont, long disc) : kind_(kind), cont_(cont), disc_(disc) {
    normalize();
  }

  void normalize() {
    switch (kind_.family()) {
      case group_family::real_line:
        disc_ = 0;
        break;
      case group_family::real_by_zn:
        disc_ = wrap_mod(disc_, kind_.modulus());
        break;
      case group_family::circle_by_z:
        // Reduce the real part of theta to [0, 2pi); kernels are exactly
        // 2pi-periodic in it, complexified or not.
        cont_ = cx(wrap_positive(cont_.real(), two_pi), cont_.imag());
        break;
    }
  }

  GroupKind kind_;
  cx cont_;
  long disc_;
};

/// Fourier kernel f(x, y); symmetric, multiplicative in each slot.
inline cx fourier_kernel(const GroupPoint& x, const GroupPoint& y) {
  x.check_same(y);
  switch (x.kind().family()) {
    case group_family::real_line:
      return expi(two_pi * x.cont() * y.cont());
    case group_family::real_by_zn: {
      double nn = static_cast<double>(x.disc()) * static_cast<double>(y.disc());
      return expi(two_pi * x.cont() * y.cont() - two_pi * nn / x.kind().modulus());
    }
    case group_family::circle_by_z:
      return expi(x.cont() * static_cast<double>(y.disc()) +
                  y.cont() * static_cast<double>(x.disc()));
  }
  throw error("unreachable");
}

/// Gaussian exponent G(x); G(-x) = G(x), G(x+y) = f(x,y) G(x) G(y).
inline cx gaussian(const GroupPoint& x) {
  switch (x.kind().family()) {
    case group_family::real_line:
      return expi(pi * x.cont() * x.cont());
    case group_family::real_by_zn: {
      double n = static_cast<double>(x.disc());
      int N = x.kind().modulus();
      return expi(pi * x.cont() * x.cont() - pi * n * (n + N) / N);
    }
    case group_family::circle_by_z:
      return expi(x.cont() * static_cast<double>(x.disc()));
  }
  throw error("unreachable");
}

}  // namespace qdl
