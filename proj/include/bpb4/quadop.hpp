#pragma once

// Quadruples (y1, y2, y3, y4) in Y^4. A quadruple doubles as the operator
// T : l_inf^4 -> Y with T(v_i) = y_i; T lies in the unit ball exactly when
// the quadruple lies in
//
//   M = { (y_i) in (B_Y)^4 : y_a - y_b + y_c in B_Y for all a < b < c }.

#include <array>
#include <string>

#include "bpb4/codomain.hpp"
#include "bpb4/cube4.hpp"

namespace bpb4 {

enum class QuadRole { Points, Operator };

template <Scalar S>
struct Quad {
  std::array<YVec<S>, 4> ys;
  QuadRole role = QuadRole::Operator;

  Quad() = default;
  explicit Quad(std::array<YVec<S>, 4> v, QuadRole r = QuadRole::Operator);

  /// Shared space; throws DomainError when the four vectors disagree.
  const SpaceDescriptor& space() const;

  /// y_i for i in 1..4.
  YVec<S>& at(int i) { return ys.at(static_cast<std::size_t>(i - 1)); }
  const YVec<S>& at(int i) const { return ys.at(static_cast<std::size_t>(i - 1)); }

  bool operator==(const Quad& o) const { return ys == o.ys; }
};

template <Scalar S>
Quad<S> operator-(const Quad<S>& a, const Quad<S>& b);
template <Scalar S>
Quad<S> operator+(const Quad<S>& a, const Quad<S>& b);
template <Scalar S>
Quad<S> operator*(const S& c, const Quad<S>& q);
template <Scalar S>
Quad<S> negate(const Quad<S>& q);

/// The eight norms whose maximum is the operator norm: |y_1|..|y_4| then
/// |y1-y2+y3|, |y1-y2+y4|, |y1-y3+y4|, |y2-y3+y4|.
template <Scalar S>
std::array<S, 8> vertex_image_norms(const Quad<S>& q);

/// Label of entry k of vertex_image_norms ("y1", ..., "y2-y3+y4").
const std::string& vertex_image_label(std::size_t k);

template <Scalar S>
struct MembershipReport {
  bool member = false;
  S slack{};            // 1 - max of the eight norms
  std::string witness;  // label of the extremal check
};

template <Scalar S>
MembershipReport<S> is_in_m4(const Quad<S>& q);

/// Image of x under the operator with T(v_i) = y_i.
template <Scalar S>
YVec<S> apply(const Quad<S>& q, const Vec4<S>& x);

template <Scalar S>
S op_norm(const Quad<S>& q);

/// (y1, y2, y3, y4) -> (y2, y3, y4, -y1), r times. r may be any integer;
/// the shift has order 8 and its fourth power is global negation.
template <Scalar S>
Quad<S> cyclic_shift(const Quad<S>& q, int r);

/// Operator T o g, i.e. the quadruple (T(g v_1), ..., T(g v_4)).
template <Scalar S>
Quad<S> precompose(const Quad<S>& q, const SignedPerm& g);

}  // namespace bpb4
