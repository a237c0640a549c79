#include "bpb4/cube4.hpp"

#include <algorithm>
#include <stdexcept>

#include "bpb4/errors.hpp"

namespace bpb4 {
namespace {

constexpr std::array<std::array<int, 4>, 8> kVertexSigns = {{
    {1, 1, 1, 1},     // v1
    {1, -1, 1, 1},    // v2
    {1, -1, -1, 1},   // v3
    {1, -1, -1, -1},  // v4
    {1, 1, -1, 1},    // v5 = v1 - v2 + v3
    {1, 1, -1, -1},   // v6 = v1 - v2 + v4
    {1, 1, 1, -1},    // v7 = v1 - v3 + v4
    {1, -1, 1, -1},   // v8 = v2 - v3 + v4
}};

const std::array<IndexSet, 6>& faces() {
  static const std::array<IndexSet, 6> sets = {
      IndexSet{1, 2, 3, 4}, IndexSet{1, 3, 4, 5}, IndexSet{1, 4, 6, 7},
      IndexSet{1, 2, 4, 8}, IndexSet{1, 4, 5, 6}, IndexSet{1, 4, 7, 8},
  };
  return sets;
}

template <Scalar S>
S half(const S& v) {
  return v / S(2);
}

}  // namespace

const std::array<int, 4>& vertex_signs(int id) {
  if (id < 1 || id > 8) throw std::out_of_range("vertex label outside 1..8");
  return kVertexSigns[static_cast<std::size_t>(id - 1)];
}

int vertex_id(const std::array<int, 4>& signs) {
  for (std::size_t k = 0; k < kVertexSigns.size(); ++k) {
    if (kVertexSigns[k] == signs) return static_cast<int>(k) + 1;
  }
  return 0;
}

IndexSet face_set(int k) {
  if (k < 1 || k > 6) throw std::out_of_range("face index outside 1..6");
  return faces()[static_cast<std::size_t>(k - 1)];
}

template <Scalar S>
std::array<S, 4> coords(const Vec4<S>& x) {
  return {half(S(x[0] + x[1])), half(S(x[2] - x[1])), half(S(x[3] - x[2])),
          half(S(x[0] - x[3]))};
}

template <Scalar S>
Vec4<S> from_coords(const std::array<S, 4>& c) {
  Vec4<S> r;
  for (int i = 1; i <= 4; ++i) r = r + c[static_cast<std::size_t>(i - 1)] * vertex<S>(i);
  return r;
}

template <Scalar S>
bool in_face_e1(const Vec4<S>& x) {
  return eq_tol(x[0], S(1)) && eq_tol(sup_norm(x), S(1));
}

template <Scalar S>
bool in_base_simplex(const Vec4<S>& x) {
  if (!in_face_e1(x)) return false;
  for (const S& c : coords(x)) {
    if (!le_tol(S(0), c)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// SignedPerm

SignedPerm::SignedPerm() : perm_{0, 1, 2, 3}, signs_{1, 1, 1, 1} {}

SignedPerm::SignedPerm(std::array<int, 4> perm, std::array<int, 4> signs)
    : perm_(perm), signs_(signs) {
  std::array<bool, 4> seen{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (perm_[i] < 0 || perm_[i] > 3 || seen[static_cast<std::size_t>(perm_[i])]) {
      throw std::invalid_argument("SignedPerm: not a permutation of 0..3");
    }
    seen[static_cast<std::size_t>(perm_[i])] = true;
    if (signs_[i] != 1 && signs_[i] != -1) {
      throw std::invalid_argument("SignedPerm: signs must be +-1");
    }
  }
}

SignedPerm SignedPerm::negation() { return SignedPerm({0, 1, 2, 3}, {-1, -1, -1, -1}); }

SignedPerm SignedPerm::swap(int a, int b) {
  std::array<int, 4> p{0, 1, 2, 3};
  std::swap(p.at(static_cast<std::size_t>(a)), p.at(static_cast<std::size_t>(b)));
  return SignedPerm(p, {1, 1, 1, 1});
}

SignedPerm SignedPerm::compose(const SignedPerm& inner) const {
  // this(inner(x))[i] = s[i] * inner(x)[p[i]] = s[i] * is[p[i]] * x[ip[p[i]]]
  std::array<int, 4> p{};
  std::array<int, 4> s{};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto j = static_cast<std::size_t>(perm_[i]);
    p[i] = inner.perm_[j];
    s[i] = signs_[i] * inner.signs_[j];
  }
  return SignedPerm(p, s);
}

SignedPerm SignedPerm::inverse() const {
  std::array<int, 4> p{};
  std::array<int, 4> s{};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto j = static_cast<std::size_t>(perm_[i]);
    p[j] = static_cast<int>(i);
    s[j] = signs_[i];
  }
  return SignedPerm(p, s);
}

bool SignedPerm::is_identity() const { return *this == SignedPerm(); }

std::string SignedPerm::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) out += ' ';
    out += signs_[i] < 0 ? "-x" : "x";
    out += std::to_string(perm_[i] + 1);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Face decomposition

template <Scalar S>
Vec4<S> FaceDecomposition<S>::reconstruct() const {
  Vec4<S> r;
  for (std::size_t j = 0; j < 4; ++j) r = r + weights[j] * vertex<S>(vertices[j]);
  return r;
}

template <Scalar S>
FaceDecomposition<S> face_decompose(const Vec4<S>& x) {
  if (!in_face_e1(x)) throw DomainError("face_decompose: point is not in E1");

  std::array<int, 3> order{1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)]; });
  const SignedPerm sorter({0, order[0], order[1], order[2]}, {1, 1, 1, 1});

  FaceDecomposition<S> out;
  out.pullback = sorter.inverse();
  out.weights = coords(sorter.apply(x));
  if constexpr (!ScalarTraits<S>::exact) {
    for (S& w : out.weights) {
      if (w < 0) w = 0;
    }
  }
  for (std::size_t j = 0; j < 4; ++j) {
    const auto image = out.pullback.apply(vertex<Rational>(static_cast<int>(j) + 1));
    std::array<int, 4> signs{};
    for (std::size_t i = 0; i < 4; ++i) signs[i] = sign_of(image[i]);
    out.vertices[j] = vertex_id(signs);
    out.active.insert(out.vertices[j]);
  }
  for (int k = 1; k <= 6; ++k) {
    if (face_set(k) == out.active) {
      out.face = k;
      return out;
    }
  }
  throw InvariantError("face_decompose: pulled-back vertices " + out.active.to_string() +
                       " match no face");
}

template <Scalar S>
BaseReduction<S> reduce_to_base(const Vec4<S>& x) {
  if (!eq_tol(sup_norm(x), S(1))) throw DomainError("reduce_to_base: |x| != 1");

  std::size_t j = 0;
  while (j < 4 && !eq_tol(abs_of(x[j]), S(1))) ++j;
  if (j == 4) throw InvariantError("reduce_to_base: no unit coordinate");

  SignedPerm lift = SignedPerm::swap(0, static_cast<int>(j));
  if (x[j] < 0) lift = SignedPerm::negation().compose(lift);
  const Vec4<S> on_face = lift.apply(x);

  const FaceDecomposition<S> fd = face_decompose(on_face);
  const SignedPerm sorter = fd.pullback.inverse();

  BaseReduction<S> out;
  out.base_point = sorter.apply(on_face);
  out.isometry = lift.inverse().compose(fd.pullback);
  return out;
}

// ---------------------------------------------------------------------------
// Close-face correction

template <Scalar S>
CloseFaceResult<S> close_face_correct(const Vec4<S>& x0, const Vec4<S>& u0, const S& eps) {
  if (!(eps > 0) || !(eps < ratio<S>(1, 2))) {
    throw DomainError("close_face_correct: eps must lie in (0, 1/2)");
  }
  if (!in_base_simplex(x0)) throw DomainError("close_face_correct: x0 not in co{v1..v4}");
  if (!in_face_e1(u0)) throw DomainError("close_face_correct: u0 not in E1");
  const S distance = sup_norm(u0 - x0);
  if (!(distance < eps)) throw DomainError("close_face_correct: |u0 - x0| >= eps");

  const FaceDecomposition<S> fd = face_decompose(u0);
  CloseFaceResult<S> out;
  out.face = fd.face;
  out.support = fd.active;
  for (std::size_t j = 0; j < 4; ++j) {
    out.beta[static_cast<std::size_t>(fd.vertices[j] - 1)] = fd.weights[j];
  }

  S inside(0);
  for (std::size_t i = 0; i < 4; ++i) inside += out.beta[i];
  for (std::size_t i = 4; i < 8; ++i) out.outside_mass += out.beta[i];

  if (out.outside_mass == 0) {
    out.corrected = u0;
    for (std::size_t i = 0; i < 4; ++i) out.gamma[i] = out.beta[i];
    out.witness = "none";
    return out;
  }

  // The functional pairs to alpha-mass plus outside mass on x0 - u0, and has
  // dual norm <= 1, so the outside mass is below |x0 - u0|.
  const Vec4<S> diff = x0 - u0;
  S bound;
  switch (out.face) {
    case 2:
    case 5:
      out.witness = "v2*";
      bound = half(S(diff[2] - diff[1]));
      break;
    case 3:
      out.witness = "(x4-x2)/2";
      bound = half(S(diff[3] - diff[1]));
      break;
    default:  // faces 4 and 6
      out.witness = "v3*";
      bound = half(S(diff[3] - diff[2]));
      break;
  }
  if (!le_tol(out.outside_mass, bound)) {
    throw InvariantError("close_face_correct: outside mass exceeds witness bound");
  }

  for (std::size_t i = 0; i < 4; ++i) {
    out.gamma[i] = out.beta[i] / inside;
    out.corrected = out.corrected + out.gamma[i] * vertex<S>(static_cast<int>(i) + 1);
  }
  if (!(sup_norm(out.corrected - u0) < S(3) * eps)) {
    throw InvariantError("close_face_correct: |v0 - u0| >= 3 eps");
  }
  return out;
}

#define BPB4_INSTANTIATE(S)                                                            \
  template std::array<S, 4> coords<S>(const Vec4<S>&);                                 \
  template Vec4<S> from_coords<S>(const std::array<S, 4>&);                            \
  template bool in_face_e1<S>(const Vec4<S>&);                                         \
  template bool in_base_simplex<S>(const Vec4<S>&);                                    \
  template struct FaceDecomposition<S>;                                                \
  template FaceDecomposition<S> face_decompose<S>(const Vec4<S>&);                     \
  template BaseReduction<S> reduce_to_base<S>(const Vec4<S>&);                         \
  template CloseFaceResult<S> close_face_correct<S>(const Vec4<S>&, const Vec4<S>&,   \
                                                    const S&);

BPB4_INSTANTIATE(Rational)
BPB4_INSTANTIATE(double)

#undef BPB4_INSTANTIATE

}  // namespace bpb4
