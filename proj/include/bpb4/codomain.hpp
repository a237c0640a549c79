#pragma once

// Concrete codomains Y: l1^n, finitely supported l1, lp^n (1 < p < inf),
// sup-norm spaces l_inf^m, and the real line.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpb4/scalar.hpp"

namespace bpb4 {

enum class Family { L1, Lp, Sup, Reals };

struct SpaceDescriptor {
  Family family = Family::Reals;
  double p = 1.0;                  // exponent, Lp only
  std::optional<std::size_t> dim{1};  // empty: finitely supported l1

  static SpaceDescriptor l1(std::size_t n);
  static SpaceDescriptor l1_infinite();
  static SpaceDescriptor lp(double p, std::size_t n);
  static SpaceDescriptor sup(std::size_t n);
  static SpaceDescriptor reals();

  bool infinite() const { return !dim.has_value(); }
  bool uniformly_convex() const { return family == Family::Lp || family == Family::Reals; }

  /// Compact form used on the command line: "l1:3", "l1:inf", "lp:2:3",
  /// "sup:4", "r".
  std::string to_string() const;
  static SpaceDescriptor parse(std::string_view text);

  bool operator==(const SpaceDescriptor&) const = default;
};

/// Throws DomainError for p <= 1, zero dimension, or an infinite
/// dimension outside the l1 family.
void validate(const SpaceDescriptor& space);

/// An element of Y. For finitely supported l1 the coordinate list may have
/// any length; entries past its end are zero.
template <Scalar S>
struct YVec {
  SpaceDescriptor space;
  std::vector<S> coords;

  YVec() = default;
  YVec(SpaceDescriptor sp, std::vector<S> c);

  static YVec zero(const SpaceDescriptor& sp);
  /// k-th unit vector, 0-based.
  static YVec unit(const SpaceDescriptor& sp, std::size_t k);

  S at(std::size_t k) const { return k < coords.size() ? coords[k] : S(0); }
  std::size_t extent() const { return coords.size(); }

  /// Drops trailing zeros of a finitely supported vector.
  void trim();

  bool operator==(const YVec& o) const;

  YVec operator-() const;
  friend YVec operator+(const YVec& a, const YVec& b) { return combine(a, b, 1); }
  friend YVec operator-(const YVec& a, const YVec& b) { return combine(a, b, -1); }
  friend YVec operator*(const S& c, const YVec& a) {
    YVec r = a;
    for (S& v : r.coords) v = c * v;
    return r;
  }
  friend YVec operator/(const YVec& a, const S& c) {
    YVec r = a;
    for (S& v : r.coords) v = v / c;
    return r;
  }

 private:
  static YVec combine(const YVec& a, const YVec& b, int sign);
};

enum class FunctionalKind { SignVector, DualCoordinates };

/// A norm-one element of Y*. Sign vectors are the extreme points of the
/// l1 dual ball (entries past the stored list count as +1); dual coordinates
/// represent a general dual element (entries past the list count as 0).
template <Scalar S>
struct Functional {
  SpaceDescriptor space;
  FunctionalKind kind = FunctionalKind::DualCoordinates;
  std::vector<S> coords;

  S entry(std::size_t k) const;
  S operator()(const YVec<S>& y) const;
};

template <Scalar S>
S norm(const YVec<S>& y);

template <Scalar S>
S dual_norm(const Functional<S>& f);

/// Norm-one functional f with f(y) = |y|. For l1 the sign vector of y with
/// zero coordinates mapped to +1.
template <Scalar S>
Functional<S> support_functional(const YVec<S>& y);

/// A lower bound for the modulus of convexity, exact where a closed form
/// exists: R -> eps/2; lp, p >= 2 -> 1 - (1 - (eps/2)^p)^(1/p);
/// 1 < p < 2 -> (p - 1) eps^2 / 8.
template <Scalar S>
S modulus_convexity(const SpaceDescriptor& space, const S& eps);

}  // namespace bpb4
