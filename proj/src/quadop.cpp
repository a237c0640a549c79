#include "bpb4/quadop.hpp"

#include "bpb4/errors.hpp"

namespace bpb4 {
namespace {

constexpr std::array<std::array<int, 3>, 4> kTriples = {{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};

}  // namespace

template <Scalar S>
Quad<S>::Quad(std::array<YVec<S>, 4> v, QuadRole r) : ys(std::move(v)), role(r) {
  space();
}

template <Scalar S>
const SpaceDescriptor& Quad<S>::space() const {
  for (std::size_t i = 1; i < 4; ++i) {
    if (!(ys[i].space == ys[0].space)) {
      throw DomainError("quadruple mixes spaces " + ys[0].space.to_string() + " and " +
                        ys[i].space.to_string());
    }
  }
  return ys[0].space;
}

template <Scalar S>
Quad<S> operator-(const Quad<S>& a, const Quad<S>& b) {
  Quad<S> r = a;
  for (std::size_t i = 0; i < 4; ++i) r.ys[i] = a.ys[i] - b.ys[i];
  return r;
}

template <Scalar S>
Quad<S> operator+(const Quad<S>& a, const Quad<S>& b) {
  Quad<S> r = a;
  for (std::size_t i = 0; i < 4; ++i) r.ys[i] = a.ys[i] + b.ys[i];
  return r;
}

template <Scalar S>
Quad<S> operator*(const S& c, const Quad<S>& q) {
  Quad<S> r = q;
  for (auto& y : r.ys) y = c * y;
  return r;
}

template <Scalar S>
Quad<S> negate(const Quad<S>& q) {
  Quad<S> r = q;
  for (auto& y : r.ys) y = -y;
  return r;
}

const std::string& vertex_image_label(std::size_t k) {
  static const std::array<std::string, 8> labels = {
      "y1", "y2", "y3", "y4", "y1-y2+y3", "y1-y2+y4", "y1-y3+y4", "y2-y3+y4"};
  return labels.at(k);
}

template <Scalar S>
std::array<S, 8> vertex_image_norms(const Quad<S>& q) {
  q.space();
  std::array<S, 8> out;
  for (int i = 1; i <= 4; ++i) out[static_cast<std::size_t>(i - 1)] = norm(q.at(i));
  for (std::size_t t = 0; t < kTriples.size(); ++t) {
    const auto& [a, b, c] = kTriples[t];
    out[4 + t] = norm(q.at(a) - q.at(b) + q.at(c));
  }
  return out;
}

template <Scalar S>
MembershipReport<S> is_in_m4(const Quad<S>& q) {
  const auto norms = vertex_image_norms(q);
  std::size_t worst = 0;
  for (std::size_t k = 1; k < norms.size(); ++k) {
    if (norms[k] > norms[worst]) worst = k;
  }
  MembershipReport<S> rep;
  rep.slack = S(1) - norms[worst];
  rep.witness = vertex_image_label(worst);
  rep.member = le_tol(S(0), rep.slack);
  return rep;
}

template <Scalar S>
YVec<S> apply(const Quad<S>& q, const Vec4<S>& x) {
  const auto c = coords(x);
  YVec<S> r = YVec<S>::zero(q.space());
  for (int i = 1; i <= 4; ++i) r = r + c[static_cast<std::size_t>(i - 1)] * q.at(i);
  return r;
}

template <Scalar S>
S op_norm(const Quad<S>& q) {
  const auto norms = vertex_image_norms(q);
  S m = norms[0];
  for (const S& v : norms) {
    if (v > m) m = v;
  }
  return m;
}

template <Scalar S>
Quad<S> cyclic_shift(const Quad<S>& q, int r) {
  const int steps = ((r % 8) + 8) % 8;
  Quad<S> out = q;
  for (int s = 0; s < steps; ++s) {
    Quad<S> next = out;
    next.ys[0] = out.ys[1];
    next.ys[1] = out.ys[2];
    next.ys[2] = out.ys[3];
    next.ys[3] = -out.ys[0];
    out = std::move(next);
  }
  return out;
}

template <Scalar S>
Quad<S> precompose(const Quad<S>& q, const SignedPerm& g) {
  Quad<S> out = q;
  for (int i = 1; i <= 4; ++i) out.at(i) = apply(q, g.apply(vertex<S>(i)));
  return out;
}

#define BPB4_INSTANTIATE(S)                                                  \
  template struct Quad<S>;                                                   \
  template Quad<S> operator-<S>(const Quad<S>&, const Quad<S>&);             \
  template Quad<S> operator+<S>(const Quad<S>&, const Quad<S>&);             \
  template Quad<S> operator*<S>(const S&, const Quad<S>&);                   \
  template Quad<S> negate<S>(const Quad<S>&);                                \
  template std::array<S, 8> vertex_image_norms<S>(const Quad<S>&);           \
  template MembershipReport<S> is_in_m4<S>(const Quad<S>&);                  \
  template YVec<S> apply<S>(const Quad<S>&, const Vec4<S>&);                 \
  template S op_norm<S>(const Quad<S>&);                                     \
  template Quad<S> cyclic_shift<S>(const Quad<S>&, int);                     \
  template Quad<S> precompose<S>(const Quad<S>&, const SignedPerm&);

BPB4_INSTANTIATE(Rational)
BPB4_INSTANTIATE(double)

#undef BPB4_INSTANTIATE

}  // namespace bpb4
