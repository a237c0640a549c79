#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "bpb4/quadop.hpp"

namespace bpb4::test {

using Q = Rational;

inline Q q(long num, long den = 1) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

template <Scalar S = Q>
YVec<S> yv(const SpaceDescriptor& sp, std::initializer_list<S> c) {
  return YVec<S>(sp, std::vector<S>(c));
}

template <Scalar S = Q>
Vec4<S> v4(S a, S b, S c, S d) {
  Vec4<S> v;
  v.x = {a, b, c, d};
  return v;
}

template <Scalar S>
Quad<S> quad(const YVec<S>& a, const YVec<S>& b, const YVec<S>& c, const YVec<S>& d) {
  return Quad<S>({a, b, c, d});
}

/// Quadruple in R given by four scalars.
template <Scalar S = Q>
Quad<S> rquad(S a, S b, S c, S d) {
  const auto r = SpaceDescriptor::reals();
  return quad(yv<S>(r, {a}), yv<S>(r, {b}), yv<S>(r, {c}), yv<S>(r, {d}));
}

}  // namespace bpb4::test
