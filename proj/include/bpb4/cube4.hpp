#pragma once

// Geometry of the unit ball of l_inf^4: the face E1 = {x : x(1) = 1 = |x|},
// its eight extreme points v1..v8, the basis {v1..v4} with its biorthogonal
// functionals, the six-simplex decomposition of E1, signed-permutation
// isometries, and the close-face correction.

#include <array>
#include <cstddef>
#include <string>

#include "bpb4/index_set.hpp"
#include "bpb4/scalar.hpp"

namespace bpb4 {

/// A point of R^4 under the sup norm. Storage is 0-based: x[0] is x(1).
template <Scalar S>
struct Vec4 {
  std::array<S, 4> x{};

  S& operator[](std::size_t i) { return x[i]; }
  const S& operator[](std::size_t i) const { return x[i]; }
  bool operator==(const Vec4&) const = default;

  friend Vec4 operator+(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (std::size_t i = 0; i < 4; ++i) r.x[i] = a.x[i] + b.x[i];
    return r;
  }
  friend Vec4 operator-(const Vec4& a, const Vec4& b) {
    Vec4 r;
    for (std::size_t i = 0; i < 4; ++i) r.x[i] = a.x[i] - b.x[i];
    return r;
  }
  friend Vec4 operator*(const S& c, const Vec4& a) {
    Vec4 r;
    for (std::size_t i = 0; i < 4; ++i) r.x[i] = c * a.x[i];
    return r;
  }
};

template <Scalar S>
S sup_norm(const Vec4<S>& v) {
  S m = abs_of(v[0]);
  for (std::size_t i = 1; i < 4; ++i) {
    const S a = abs_of(v[i]);
    if (a > m) m = a;
  }
  return m;
}

/// Sign pattern of vertex v_id, id in 1..8.
const std::array<int, 4>& vertex_signs(int id);

/// Label 1..8 of the vertex with this sign pattern, or 0 when the pattern
/// is not an extreme point of E1 (first entry not +1, or entries not +-1).
int vertex_id(const std::array<int, 4>& signs);

template <Scalar S>
Vec4<S> vertex(int id) {
  const auto& s = vertex_signs(id);
  Vec4<S> v;
  for (std::size_t i = 0; i < 4; ++i) v[i] = S(s[i]);
  return v;
}

/// The six vertex-label sets A_1..A_6 whose convex hulls cover E1.
IndexSet face_set(int k);

/// Biorthogonal coordinates (v1*(x), v2*(x), v3*(x), v4*(x)) of x in the
/// basis {v1, v2, v3, v4}.
template <Scalar S>
std::array<S, 4> coords(const Vec4<S>& x);

/// Sum c1 v1 + c2 v2 + c3 v3 + c4 v4.
template <Scalar S>
Vec4<S> from_coords(const std::array<S, 4>& c);

/// x(1) = 1 = |x| (exact, or within 1e-9 in the float backend).
template <Scalar S>
bool in_face_e1(const Vec4<S>& x);

/// x lies in co{v1, v2, v3, v4}: x in E1 with nonnegative coordinates.
template <Scalar S>
bool in_base_simplex(const Vec4<S>& x);

/// A sup-norm isometry of R^4: (g x)[i] = sign[i] * x[perm[i]] (0-based).
class SignedPerm {
 public:
  SignedPerm();
  SignedPerm(std::array<int, 4> perm, std::array<int, 4> signs);

  static SignedPerm negation();
  static SignedPerm swap(int a, int b);

  template <Scalar S>
  Vec4<S> apply(const Vec4<S>& v) const {
    Vec4<S> r;
    for (std::size_t i = 0; i < 4; ++i) {
      r[i] = signs_[i] < 0 ? S(-v[static_cast<std::size_t>(perm_[i])])
                           : v[static_cast<std::size_t>(perm_[i])];
    }
    return r;
  }

  /// (*this) after inner: x -> this(inner(x)).
  SignedPerm compose(const SignedPerm& inner) const;
  SignedPerm inverse() const;
  bool is_identity() const;

  const std::array<int, 4>& perm() const { return perm_; }
  const std::array<int, 4>& signs() const { return signs_; }
  bool operator==(const SignedPerm&) const = default;

  std::string to_string() const;

 private:
  std::array<int, 4> perm_;
  std::array<int, 4> signs_;
};

template <Scalar S>
struct FaceDecomposition {
  int face = 1;                    // k in 1..6
  IndexSet active;                 // A_k
  std::array<int, 4> vertices{};   // label carrying weights[j]
  std::array<S, 4> weights{};      // nonnegative, sum 1
  SignedPerm pullback;             // maps co{v1..v4} onto co{v_i : i in A_k}

  Vec4<S> reconstruct() const;
};

/// Writes x in E1 as a convex combination over one of the six faces A_k.
/// Coordinates 2..4 are sorted ascending (stable on ties), the sorted point's
/// basis coordinates are the weights, and the sort is pulled back.
/// Throws DomainError unless x in E1.
template <Scalar S>
FaceDecomposition<S> face_decompose(const Vec4<S>& x);

template <Scalar S>
struct BaseReduction {
  SignedPerm isometry;  // isometry.apply(base_point) == input
  Vec4<S> base_point;   // in co{v1..v4}
};

/// Moves a unit-norm x into co{v1..v4} by a signed permutation. The smallest
/// index j with |x(j)| = 1 is swapped into slot 1, the whole vector is negated
/// when x(j) = -1, then coordinates 2..4 are sorted.
/// Throws DomainError unless |x| = 1.
template <Scalar S>
BaseReduction<S> reduce_to_base(const Vec4<S>& x);

template <Scalar S>
struct CloseFaceResult {
  Vec4<S> corrected;          // v0, in co{v1..v4}
  int face = 1;               // face of u0's decomposition
  IndexSet support;           // A, vertex labels of u0's decomposition
  std::array<S, 8> beta{};    // weights of u0, indexed by label-1
  std::array<S, 8> gamma{};   // weights of v0 (labels 1..4 only)
  S outside_mass{};           // sum of beta over A \ {1..4}
  std::string witness;        // functional bounding outside_mass
};

/// Given x0 in co{v1..v4} and u0 in E1 with |u0 - x0| < eps < 1/2, finds v0
/// in co{v1..v4} with |v0 - u0| < 3 eps whose weights are supported inside
/// the support of u0's weights. Throws DomainError on violated input.
template <Scalar S>
CloseFaceResult<S> close_face_correct(const Vec4<S>& x0, const Vec4<S>& u0,
                                      const S& eps);

}  // namespace bpb4
