#include <gtest/gtest.h>

#include <sstream>

#include "bpb4/errors.hpp"
#include "bpb4/harness.hpp"
#include "test_util.hpp"

using namespace bpb4;
using namespace bpb4::test;

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  Rng a = Rng::stream(42, 0), b = Rng::stream(42, 0), c = Rng::stream(42, 1);
  const auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
  Rng r(1);
  for (int n = 0; n < 1000; ++n) {
    const int v = r.between(-3, 5);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 5);
    const Q g = r.grid(16);
    EXPECT_LE(abs_of(g), 1);
  }
}

TEST(Splitmix, KnownValue) {
  // Reference output of the splitmix64 finalizer for input 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(GenQuad, ConstantMode) {
  const auto sp = SpaceDescriptor::l1(3);
  const auto qd = gen_quad<Q>({sp, 0, GenMode::Constant});
  const auto e1 = YVec<Q>::unit(sp, 0);
  EXPECT_EQ(qd, quad(e1, e1, e1, e1));
  const auto rep = is_in_m4(qd);
  EXPECT_TRUE(rep.member);
  EXPECT_EQ(rep.slack, 0);
}

TEST(GenQuad, BoundaryHasZeroSlack) {
  for (const char* sp : {"r", "l1:2", "l1:5", "sup:3", "l1:inf"}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto rep = is_in_m4(gen_quad<Q>({SpaceDescriptor::parse(sp), seed, GenMode::Boundary}));
      EXPECT_TRUE(rep.member);
      EXPECT_EQ(rep.slack, 0);
    }
  }
}

TEST(GenQuad, InteriorHasPositiveSlack) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto rep = is_in_m4(gen_quad<Q>({SpaceDescriptor::l1(3), seed, GenMode::Interior}));
    EXPECT_TRUE(rep.member);
    EXPECT_GT(rep.slack, 0);
  }
}

TEST(GenQuad, NearFacePushesTheSum) {
  const auto sp = SpaceDescriptor::l1(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenSpec spec{sp, seed, GenMode::NearFace, q(1, 100), 2, 3};
    const auto qd = gen_quad<Q>(spec);
    EXPECT_TRUE(is_in_m4(qd).member);
    EXPECT_GE(norm(qd.at(2) + qd.at(3)), 2 * (1 - q(1, 100)));
  }
}

TEST(GenQuad, SameSeedSameQuad) {
  const GenSpec spec{SpaceDescriptor::l1(4), 77, GenMode::Boundary};
  EXPECT_EQ(gen_quad<Q>(spec), gen_quad<Q>(spec));
  const GenSpec fspec{SpaceDescriptor::lp(2, 3), 77, GenMode::Boundary};
  EXPECT_EQ(gen_quad<double>(fspec), gen_quad<double>(fspec));
}

TEST(IntervalQuad, IsMember) {
  const auto sp = SpaceDescriptor::l1(2);
  const auto u = yv(sp, {q(1, 2), q(-1, 2)});
  for (int lo = 1; lo <= 4; ++lo) {
    for (int hi = lo; hi <= 4; ++hi) EXPECT_TRUE(is_in_m4(interval_quad(u, lo, hi)).member);
  }
}

TEST(GenFixRequest, IsValidForItsRoute) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto req = gen_fix_request<Q>(SpaceDescriptor::l1(3), seed, q(1, 2));
    const Q rho = schedule<Q>(req.quad.space()).rho(req.eps);
    EXPECT_TRUE(is_in_m4(req.quad).member);
    for (int i : req.active.elements()) EXPECT_GT(req.functional(req.quad.at(i)), 1 - rho);
  }
}

TEST(GenBpbInstance, SatisfiesPrecondition) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng = Rng::stream(3, seed);
    const Q eps = q(3, 10);
    const auto inst = gen_bpb_instance<Q>(SpaceDescriptor::l1(3), rng, eps);
    EXPECT_EQ(op_norm(inst.T), 1);
    EXPECT_EQ(sup_norm(inst.x0), 1);
    EXPECT_GT(norm(apply(inst.T, inst.x0)), 1 - schedule<Q>(inst.T.space()).eta(eps));
  }
}

TEST(BruteSearch, AlreadyAttaining) {
  const auto qd = rquad<Q>(1, 1, 0, 0);
  const auto z = brute_ahsp_search(qd, IndexSet{1, 2}, q(1, 10), 5);
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ(*z, qd);
}

TEST(BruteSearch, LineExample) {
  const auto qd = rquad<Q>(q(999, 1000), 1, -1, -1);
  const auto z = brute_ahsp_search(qd, IndexSet{1, 2}, q(1, 100), 5);
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ(abs_of(z->at(1).at(0)), 1);
  EXPECT_EQ(z->at(1), z->at(2));
  EXPECT_TRUE(is_in_m4(*z).member);
  for (int i = 1; i <= 4; ++i) EXPECT_LT(norm(z->at(i) - qd.at(i)), q(1, 100));
}

TEST(BruteSearch, ConsistentWithFixOnPlane) {
  const auto sp = SpaceDescriptor::l1(2);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto req = gen_fix_request<Q>(sp, seed, q(1, 2), 2);
    const auto z = brute_ahsp_search(req.quad, req.active, req.eps, 5, 200'000);
    if (!z) continue;  // inconclusive
    EXPECT_TRUE(is_in_m4(*z).member);
    YVec<Q> s = YVec<Q>::zero(sp);
    for (int i : req.active.elements()) s = s + z->at(i);
    EXPECT_EQ(norm(s), req.active.size());
  }
}

TEST(BruteSearch, CoarseGridIsInconclusive) {
  // Only the centre offset is tried with res = 1, and y1 never reaches the sphere.
  const auto qd = rquad<Q>(q(1, 2), q(1, 2), 0, 0);
  EXPECT_FALSE(brute_ahsp_search(qd, IndexSet{1, 2}, q(1, 100), 1).has_value());
}

TEST(BruteSearch, SizeLimits) {
  const auto sp = SpaceDescriptor::l1(3);
  const auto e = YVec<Q>::unit(sp, 0);
  EXPECT_THROW(brute_ahsp_search(quad(e, e, e, e), IndexSet{1}, q(1, 10), 5), SizeError);
  EXPECT_THROW(brute_ahsp_search(rquad<Q>(1, 1, 1, 1), IndexSet{1}, q(1, 10), 26), SizeError);
}

TEST(Sweep, SingleRowBelowEps) {
  const auto res = sweep<Q>(SpaceDescriptor::l1(3), {q(3, 10)}, 1, 2024);
  ASSERT_EQ(res.rows.size(), 1u);
  EXPECT_LT(res.rows[0].point_distance, q(3, 10));
  EXPECT_LT(res.rows[0].operator_distance, q(3, 10));
  EXPECT_EQ(res.rows[0].attainment_defect, 0);
}

TEST(Sweep, EmptyEpsListGivesHeaderOnly) {
  const auto res = sweep<Q>(SpaceDescriptor::l1(3), {}, 10, 1);
  std::ostringstream out;
  write_csv(out, res.rows);
  EXPECT_EQ(out.str(), "eps,eta,point_distance,operator_distance,attainment_defect,case,runtime_ms\n");
}

TEST(Sweep, ByteReproducible) {
  auto run = [] {
    std::ostringstream out;
    write_csv(out, sweep<Q>(SpaceDescriptor::l1(4), {q(1, 10), q(3, 10)}, 25, 9).rows);
    return out.str();
  };
  EXPECT_EQ(run(), run());
}

TEST(Sweep, TamperedPipelineAbortsWithInstance) {
  SweepOptions<Q> opts;
  opts.tamper = [](Certificate<Q>& c) { c.u0[1] += c.eps; };
  try {
    sweep<Q>(SpaceDescriptor::l1(2), {q(3, 10)}, 3, 4, opts);
    FAIL() << "tampered sweep passed";
  } catch (const SweepFailure& f) {
    EXPECT_TRUE(f.instance().contains("T"));
    EXPECT_TRUE(f.instance().contains("x0"));
  }
}
