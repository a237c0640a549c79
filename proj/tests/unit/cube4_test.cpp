#include <gtest/gtest.h>

#include <random>

#include "bpb4/cube4.hpp"
#include "bpb4/errors.hpp"
#include "test_util.hpp"

using namespace bpb4;
using namespace bpb4::test;

TEST(Coords, BiorthogonalOnBasis) {
  for (int i = 1; i <= 4; ++i) {
    const auto c = coords(vertex<Q>(i));
    for (int k = 0; k < 4; ++k) EXPECT_EQ(c[k], Q(k == i - 1 ? 1 : 0));
  }
}

TEST(Coords, OuterVertexExpansion) {
  const auto c = coords(vertex<Q>(5));
  EXPECT_EQ(c, (std::array<Q, 4>{1, -1, 1, 0}));
}

TEST(Coords, MixedPoint) {
  const auto x = v4<Q>(1, -1, 0, q(1, 2));
  const auto c = coords(x);
  EXPECT_EQ(c, (std::array<Q, 4>{0, q(1, 2), q(1, 4), q(1, 4)}));
  EXPECT_EQ(from_coords(c), x);
}

TEST(Coords, RoundTripRandom) {
  std::mt19937_64 eng(7);
  for (int n = 0; n < 200; ++n) {
    Vec4<Q> x;
    for (auto& e : x.x) e = q(static_cast<long>(eng() % 33) - 16, 16);
    EXPECT_EQ(from_coords(coords(x)), x);
  }
}

TEST(Vertices, LabelsRoundTrip) {
  for (int i = 1; i <= 8; ++i) EXPECT_EQ(vertex_id(vertex_signs(i)), i);
  EXPECT_EQ(vertex_id({-1, 1, 1, 1}), 0);
}

TEST(FaceDecompose, VertexOne) {
  const auto d = face_decompose(vertex<Q>(1));
  EXPECT_EQ(d.face, 1);
  EXPECT_EQ(d.weights, (std::array<Q, 4>{1, 0, 0, 0}));
}

TEST(FaceDecompose, SortedPointStaysOnFirstFace) {
  const auto d = face_decompose(v4<Q>(1, -1, 0, q(1, 2)));
  EXPECT_EQ(d.face, 1);
  EXPECT_EQ(d.weights, (std::array<Q, 4>{0, q(1, 2), q(1, 4), q(1, 4)}));
}

TEST(FaceDecompose, FifthFaceEqualWeights) {
  const auto x = v4<Q>(1, q(1, 2), q(-1, 2), 0);
  const auto d = face_decompose(x);
  EXPECT_EQ(d.face, 5);
  EXPECT_EQ(d.active, (IndexSet{1, 4, 5, 6}));
  for (const auto& w : d.weights) EXPECT_EQ(w, q(1, 4));
  EXPECT_EQ(d.reconstruct(), x);
}

TEST(FaceDecompose, RejectsPointsOffTheFace) {
  EXPECT_THROW(face_decompose(v4<Q>(q(1, 2), 0, 0, 0)), DomainError);
  EXPECT_THROW(face_decompose(v4<Q>(1, 2, 0, 0)), DomainError);
  EXPECT_THROW(face_decompose(v4<Q>(-1, 0, 0, 0)), DomainError);
}

TEST(FaceDecompose, RandomPointsReconstructOnTheirFace) {
  std::mt19937_64 eng(11);
  for (int n = 0; n < 500; ++n) {
    Vec4<Q> x;
    x[0] = 1;
    for (int k = 1; k < 4; ++k) x[k] = q(static_cast<long>(eng() % 17) - 8, 8);
    const auto d = face_decompose(x);
    Q total = 0;
    for (int j = 0; j < 4; ++j) {
      EXPECT_GE(d.weights[j], 0);
      EXPECT_TRUE(d.active.contains(d.vertices[j]));
      total += d.weights[j];
    }
    EXPECT_EQ(total, 1);
    EXPECT_EQ(d.active, face_set(d.face));
    EXPECT_EQ(d.reconstruct(), x);
  }
}

TEST(ReduceToBase, IdentityOnV1) {
  const auto r = reduce_to_base(vertex<Q>(1));
  EXPECT_TRUE(r.isometry.is_identity());
  EXPECT_EQ(r.base_point, vertex<Q>(1));
}

TEST(ReduceToBase, NegatedV1) {
  const auto x = v4<Q>(-1, -1, -1, -1);
  const auto r = reduce_to_base(x);
  EXPECT_EQ(r.base_point, vertex<Q>(1));
  EXPECT_EQ(r.isometry, SignedPerm::negation());
}

TEST(ReduceToBase, MovesSecondCoordinate) {
  const auto x = v4<Q>(q(1, 2), -1, 0, q(1, 3));
  const auto r = reduce_to_base(x);
  EXPECT_TRUE(in_base_simplex(r.base_point));
  EXPECT_EQ(r.isometry.apply(r.base_point), x);
  EXPECT_EQ(r.isometry.perm()[1], 0);
}

TEST(ReduceToBase, RandomUnitPoints) {
  std::mt19937_64 eng(3);
  for (int n = 0; n < 500; ++n) {
    Vec4<Q> x;
    for (auto& e : x.x) e = q(static_cast<long>(eng() % 9) - 4, 4);
    x[eng() % 4] = (eng() & 1) ? 1 : -1;
    const auto r = reduce_to_base(x);
    EXPECT_TRUE(in_base_simplex(r.base_point));
    EXPECT_EQ(r.isometry.apply(r.base_point), x);
  }
  EXPECT_THROW(reduce_to_base(v4<Q>(q(1, 2), 0, 0, 0)), DomainError);
}

TEST(SignedPerm, ComposeAndInverse) {
  const SignedPerm g({2, 0, 3, 1}, {1, -1, -1, 1});
  const SignedPerm h = SignedPerm::swap(1, 3).compose(SignedPerm::negation());
  const auto x = v4<Q>(1, 2, 3, 4);
  EXPECT_EQ(g.compose(h).apply(x), g.apply(h.apply(x)));
  EXPECT_EQ(g.inverse().apply(g.apply(x)), x);
  EXPECT_TRUE(g.compose(g.inverse()).is_identity());
  EXPECT_EQ(sup_norm(g.apply(x)), sup_norm(x));
}

TEST(CloseFace, PointInBaseSimplexIsKept) {
  const auto x0 = vertex<Q>(1);
  const auto u0 = from_coords(std::array<Q, 4>{q(9, 10), q(1, 20), q(1, 20), 0});
  const auto r = close_face_correct(x0, u0, q(1, 4));
  EXPECT_EQ(r.corrected, u0);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(r.gamma[i], r.beta[i]);
  EXPECT_EQ(r.outside_mass, 0);
}

TEST(CloseFace, MassOnV5MovesToV1) {
  const auto x0 = vertex<Q>(1);
  const auto u0 = q(9, 10) * vertex<Q>(1) + q(1, 10) * vertex<Q>(5);
  const auto r = close_face_correct(x0, u0, q(1, 4));
  EXPECT_EQ(r.support, (IndexSet{1, 3, 4, 5}));
  EXPECT_EQ(face_set(r.face), r.support);
  EXPECT_EQ(r.beta[0], q(9, 10));
  EXPECT_EQ(r.beta[4], q(1, 10));
  EXPECT_EQ(r.corrected, vertex<Q>(1));
  EXPECT_EQ(r.gamma[0], 1);
  EXPECT_EQ(sup_norm(r.corrected - u0), q(1, 5));
  EXPECT_EQ(r.witness, "v2*");
}

TEST(CloseFace, VertexFixedPoint) {
  const auto r = close_face_correct(vertex<Q>(4), vertex<Q>(4), q(1, 10));
  EXPECT_EQ(r.corrected, vertex<Q>(4));
}

TEST(CloseFace, Preconditions) {
  const auto x0 = vertex<Q>(1);
  EXPECT_THROW(close_face_correct(x0, x0, q(1, 2)), DomainError);
  EXPECT_THROW(close_face_correct(x0, vertex<Q>(5), q(1, 4)), DomainError);
}

TEST(CloseFace, FloatBackendAgrees) {
  const auto x0 = vertex<double>(1);
  const auto u0 = 0.9 * vertex<double>(1) + 0.1 * vertex<double>(5);
  const auto r = close_face_correct(x0, u0, 0.25);
  EXPECT_NEAR(sup_norm(r.corrected - vertex<double>(1)), 0.0, 1e-12);
}
