#include <gtest/gtest.h>

#include "bpb4/ahsp.hpp"
#include "bpb4/errors.hpp"
#include "bpb4/harness.hpp"
#include "test_util.hpp"

using namespace bpb4;
using namespace bpb4::test;

namespace {

Functional<Q> sign_functional(const SpaceDescriptor& sp, std::vector<Q> signs) {
  Functional<Q> f;
  f.space = sp;
  f.kind = FunctionalKind::SignVector;
  f.coords = std::move(signs);
  return f;
}

Functional<Q> plus_one_reals() {
  Functional<Q> f;
  f.space = SpaceDescriptor::reals();
  f.kind = FunctionalKind::DualCoordinates;
  f.coords = {Q(1)};
  return f;
}

template <Scalar S>
void expect_audit_ok(const FixRequest<S>& req, const FixResult<S>& res) {
  const auto audit = audit_fix(req, res);
  EXPECT_TRUE(audit.ok) << (audit.failures.empty() ? std::string() : audit.failures.front());
}

}  // namespace

TEST(Schedule, L1ClosedForms) {
  const auto s = schedule<Q>(SpaceDescriptor::l1(3));
  EXPECT_EQ(s.rho(q(113, 500)), q(1, 1000));
  const Q eps = q(3, 10);
  EXPECT_EQ(s.nu(eps), s.rho(eps) * s.rho(eps));
  EXPECT_EQ(s.eta(eps), q(1, 5107600));
  EXPECT_EQ(s.gamma_def(eps), s.nu(Q(eps / 4)));
  EXPECT_EQ(s.gamma_from_eta(eps), s.eta(Q(eps / 48)));
  EXPECT_EQ(s.zeta(eps), s.gamma_def(Q(eps / 2)));
}

TEST(Schedule, RealsGamma) {
  const auto s = schedule<Q>(SpaceDescriptor::reals());
  EXPECT_EQ(s.rho(q(1, 2)), q(1, 12));
  EXPECT_EQ(s.eta(q(1, 2)), s.rho(q(1, 6)) * s.rho(q(1, 6)));
}

TEST(Schedule, EtaBelowEps) {
  for (const char* sp : {"l1:2", "l1:inf", "r"}) {
    const auto s = schedule<Q>(SpaceDescriptor::parse(sp));
    for (int k = 1; k <= 20; ++k) {
      const Q eps = q(k, 21);
      EXPECT_GT(s.eta(eps), 0);
      EXPECT_LT(s.eta(eps), eps);
    }
  }
  const auto lp = schedule<double>(SpaceDescriptor::lp(2, 3));
  EXPECT_LT(lp.eta(0.5), 0.5);
}

TEST(Schedule, SupUnsupported) {
  EXPECT_THROW(schedule<Q>(SpaceDescriptor::sup(4)), UnsupportedError);
}

TEST(Singleton, OnTheLine) {
  const auto res = singleton_fix(rquad<Q>(1, 0, 0, 0), 1, q(3, 5));
  EXPECT_EQ(res.z, rquad<Q>(1, q(1, 5), q(1, 10), q(-1, 10)));
  EXPECT_EQ(res.certified, IndexSet{1});
  EXPECT_EQ(res.displacement[0], 0);
  EXPECT_EQ(res.route, "singleton");
}

TEST(Singleton, ThirdIndexMatchesShiftedRun) {
  const auto qd = rquad<Q>(0, q(1, 3), 1, q(1, 2));
  const Q eps = q(1, 2);
  const auto direct = singleton_fix(qd, 3, eps);
  const auto shifted = singleton_fix(cyclic_shift(qd, 2), 1, eps);
  EXPECT_EQ(cyclic_shift(direct.z, 2), shifted.z);
  EXPECT_EQ(direct.z.at(3), qd.at(3));
  EXPECT_EQ(direct.displacement[2], 0);
}

TEST(Singleton, RejectsSmallNorm) {
  EXPECT_THROW(singleton_fix(rquad<Q>(q(1, 2), 0, 0, 0), 1, q(1, 2)), PreconditionError);
}

TEST(ExpandActive, Intervals) {
  const auto qd = rquad<Q>(1, 1, 1, 1);
  const auto f = plus_one_reals();
  EXPECT_EQ(expand_active(qd, f, IndexSet{1, 4}, q(1, 10)), (IndexSet{1, 2, 3, 4}));
  EXPECT_EQ(expand_active(qd, f, IndexSet{2}, q(1, 10)), IndexSet{2});
  const auto qd2 = rquad<Q>(q(19, 20), q(9, 10), q(19, 20), 0);
  EXPECT_EQ(expand_active(qd2, f, IndexSet{1, 3}, q(1, 10)), (IndexSet{1, 2, 3}));
}

TEST(UcFix, AlreadyAttaining) {
  FixRequest<Q> req{rquad<Q>(1, 1, 1, 1), plus_one_reals(), IndexSet{1, 2, 3, 4}, q(1, 2)};
  const auto res = uc_fix(req);
  EXPECT_EQ(res.z, req.quad);
}

TEST(UcFix, TailOnTheLine) {
  FixRequest<Q> req{rquad<Q>(1, q(99, 100), q(1, 2), q(49, 100)), plus_one_reals(), IndexSet{1, 2},
                    q(1, 2)};
  const auto res = uc_fix(req);
  EXPECT_EQ(res.z, rquad<Q>(1, 1, q(1, 2), q(269, 650)));
  EXPECT_EQ(res.route, "uc-k2");
  expect_audit_ok(req, res);
}

TEST(UcFix, EuclideanConstant) {
  const auto sp = SpaceDescriptor::lp(2, 2);
  const auto e = yv<double>(sp, {1.0, 0.0});
  Functional<double> f{sp, FunctionalKind::DualCoordinates, {1.0, 0.0}};
  FixRequest<double> req{quad(e, e, e, e), f, IndexSet{1, 2, 3, 4}, 0.3};
  const auto res = uc_fix(req);
  for (int i = 1; i <= 4; ++i) {
    EXPECT_NEAR(res.z.at(i).at(0), 1.0, 1e-12);
    EXPECT_NEAR(res.z.at(i).at(1), 0.0, 1e-12);
  }
}

TEST(UcFix, RejectsL1) {
  const auto sp = SpaceDescriptor::l1(2);
  const auto e = yv(sp, {Q(1), Q(0)});
  FixRequest<Q> req{quad(e, e, e, e), sign_functional(sp, {1, 1}), IndexSet{1}, q(1, 2)};
  EXPECT_THROW(uc_fix(req), UnsupportedError);
}

TEST(LemmaAuxiliar, AlreadyNonnegative) {
  const auto sp = SpaceDescriptor::l1(2);
  const auto x = yv(sp, {q(1, 2), Q(0)}), y = yv(sp, {q(1, 4), Q(0)}), z = yv(sp, {q(1, 4), q(1, 2)});
  EXPECT_EQ(lemma_auxiliar(x, y, z, Q(0), Q(0)), z);
}

TEST(LemmaAuxiliar, SplitExample) {
  const auto sp = SpaceDescriptor::l1(2);
  const auto x = yv(sp, {q(1, 2), q(1, 2)}), y = yv(sp, {Q(0), Q(1)}), z = yv(sp, {q(1, 2), q(3, 10)});
  const auto w = lemma_auxiliar(x, y, z, q(1, 5), q(1, 5));
  EXPECT_EQ(w, yv(sp, {q(1, 2), q(1, 2)}));
  EXPECT_EQ(norm(w - z), q(1, 5));
  EXPECT_EQ(x - y + w, yv(sp, {Q(1), Q(0)}));
}

TEST(LemmaAuxiliar, SwappedRoles) {
  const auto sp = SpaceDescriptor::l1(2);
  const auto x = yv(sp, {q(1, 2), q(1, 2)}), y = yv(sp, {Q(0), Q(1)}), z = yv(sp, {q(1, 2), q(3, 10)});
  const auto v = lemma_auxiliar(z, y, x, q(1, 5), q(1, 5));
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_GE(v.at(k), x.at(k));
    EXPECT_GE((v - y + z).at(k), 0);
  }
}

TEST(LemmaAuxiliar, RejectsViolatedPrecondition) {
  const auto sp = SpaceDescriptor::l1(2);
  const auto x = yv(sp, {Q(0), Q(0)}), y = yv(sp, {Q(1), Q(0)}), z = yv(sp, {Q(0), Q(0)});
  EXPECT_THROW(lemma_auxiliar(x, y, z, q(1, 10), q(1, 10)), PreconditionError);
}

TEST(L1Fix, ConstantQuadUnchanged) {
  const auto sp = SpaceDescriptor::l1(3);
  const auto e = yv(sp, {Q(1), Q(0), Q(0)});
  FixRequest<Q> req{quad(e, e, e, e), sign_functional(sp, {1, 1, 1}), IndexSet{1, 2, 3, 4}, q(1, 2)};
  const auto res = l1_fix(req);
  EXPECT_EQ(res.z, req.quad);
  EXPECT_EQ(res.route, "l1-case3");
}

TEST(L1Fix, CaseOneExample) {
  const auto sp = SpaceDescriptor::l1(2);
  const auto a = yv(sp, {Q(1), Q(0)}), b = yv(sp, {Q(0), Q(-1)});
  const Q eps = q(113, 500);  // rho = 1/1000
  FixRequest<Q> req{quad(a, a, b, b), sign_functional(sp, {1, 1}), IndexSet{1, 2}, eps};
  const auto res = l1_fix(req);
  EXPECT_EQ(res.route, "l1-case1");
  EXPECT_EQ(res.z.at(1), a);
  EXPECT_EQ(res.z.at(2), a);
  EXPECT_EQ(res.z.at(3), yv(sp, {q(1, 251), q(-15625, 15813)}));
  EXPECT_EQ(res.z.at(4), yv(sp, {Q(0), q(-15625, 15813)}));
  EXPECT_EQ(norm(res.z.at(1) + res.z.at(2)), 2);
  EXPECT_LT(res.max_displacement(), 28 * q(1, 1000));
  expect_audit_ok(req, res);
}

TEST(L1Fix, RandomRequestsAllCases) {
  for (int span = 2; span <= 4; ++span) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const auto sp = SpaceDescriptor::l1(2 + seed % 5);
      const auto req = gen_fix_request<Q>(sp, seed, q(1, 3), span);
      const auto res = l1_fix(req);
      expect_audit_ok(req, res);
      const Q rho = schedule<Q>(sp).rho(req.eps);
      EXPECT_LT(res.max_displacement(), 226 * rho);
      EXPECT_LT(res.max_displacement(), res.displacement_bound);
      EXPECT_TRUE(req.active.subset_of(res.certified));
    }
  }
}

TEST(L1Fix, RejectsDenseFunctional) {
  const auto sp = SpaceDescriptor::l1(2);
  const auto e = yv(sp, {Q(1), Q(0)});
  Functional<Q> f{sp, FunctionalKind::DualCoordinates, {Q(1), q(1, 2)}};
  EXPECT_THROW(l1_fix(FixRequest<Q>{quad(e, e, e, e), f, IndexSet{1, 2}, q(1, 2)}), UnsupportedError);
}

TEST(L1Fix, RejectsNonMember) {
  const auto sp = SpaceDescriptor::l1(1);
  const auto p = yv(sp, {Q(1)}), m = yv(sp, {Q(-1)});
  FixRequest<Q> req{quad(p, m, p, m), sign_functional(sp, {1}), IndexSet{1, 3}, q(1, 2)};
  EXPECT_THROW(l1_fix(req), PreconditionError);
}

TEST(Cond3, DegenerateWeights) {
  const auto sp = SpaceDescriptor::l1(2);
  const auto qd = quad(yv(sp, {Q(1), Q(0)}), yv(sp, {q(1, 2), Q(0)}), yv(sp, {Q(0), Q(0)}),
                       yv(sp, {q(-1, 2), Q(0)}));
  const auto r = cond3_fix(qd, {Q(1), Q(0), Q(0), Q(0)}, q(1, 2));
  EXPECT_TRUE(r.active.contains(1));
  EXPECT_TRUE(r.fix.certified.contains(1));
}

TEST(Cond3, UniformWeightsOnTheLine) {
  const auto qd = rquad<Q>(1, 1, 1, 1);
  const auto r = cond3_fix(qd, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)}, q(1, 2));
  EXPECT_EQ(r.active, (IndexSet{1, 2, 3, 4}));
  EXPECT_EQ(r.fix.z, qd);
  EXPECT_FALSE(r.negated);
}

TEST(Cond3, NegationSymmetry) {
  const auto qd = rquad<Q>(-1, -1, -1, -1);
  const auto r = cond3_fix(qd, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)}, q(1, 2));
  EXPECT_EQ(r.fix.z, qd);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto req = gen_fix_request<Q>(SpaceDescriptor::l1(3), seed, q(1, 2), 2);
    const Q w = q(1, 2);
    std::array<Q, 4> alpha{};
    for (int i : req.active.elements()) alpha[static_cast<std::size_t>(i - 1)] = w;
    const auto sched = schedule<Q>(req.quad.space());
    YVec<Q> sum = YVec<Q>::zero(req.quad.space());
    for (int i = 1; i <= 4; ++i) sum = sum + alpha[static_cast<std::size_t>(i - 1)] * req.quad.at(i);
    if (norm(sum) <= 1 - sched.nu(q(1, 2))) continue;
    const auto pos = cond3_fix(req.quad, alpha, q(1, 2));
    const auto neg = cond3_fix(negate(req.quad), alpha, q(1, 2));
    EXPECT_EQ(neg.fix.z, negate(pos.fix.z));
    EXPECT_EQ(neg.active, pos.active);
  }
}

TEST(Cond3, MassBound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = Rng::stream(99, seed);
    const auto sp = SpaceDescriptor::l1(1 + seed % 4);
    const Q eps = q(1, 2);
    const auto inst = gen_bpb_instance<Q>(sp, rng, Q(eps * 3));
    const auto red = reduce_to_base(inst.x0);
    const auto alpha = coords(red.base_point);
    const auto r = cond3_fix(precompose(inst.T, red.isometry), alpha, eps);
    const auto sched = schedule<Q>(sp);
    EXPECT_GE(r.active_mass, 1 - sched.nu(eps) / sched.rho(eps));
  }
}

TEST(Cond3, RejectsWeakNorm) {
  EXPECT_THROW(cond3_fix(rquad<Q>(q(1, 2), 0, 0, 0), {Q(1), Q(0), Q(0), Q(0)}, q(1, 2)),
               PreconditionError);
}

TEST(AhspFix, GeneralL1FunctionalBridge) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto req = gen_fix_request<Q>(SpaceDescriptor::l1(3), seed, q(1, 2), 0,
                                        FunctionalChoice::General);
    const auto res = ahsp_fix(req);
    EXPECT_EQ(res.route.rfind("bridge/", 0), 0u);
    expect_audit_ok(req, res);
  }
}

TEST(DenseLift, FiniteSupportMatchesTruncation) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Q eps = q(1, 2);
    const auto req = gen_fix_request<Q>(SpaceDescriptor::l1_infinite(), seed, eps);
    const auto sched = schedule<Q>(req.quad.space());
    bool strong = true;
    for (int i : req.active.elements()) strong = strong && req.functional(req.quad.at(i)) > 1 - sched.zeta(eps);
    if (!strong) continue;
    const auto r = dense_lift(req.quad, req.functional, req.active, eps);
    EXPECT_LT(4 * r.t, eps / 2);
    EXPECT_LT(r.fix.max_displacement(), eps);
    EXPECT_TRUE(is_in_m4(r.fix.z).member);
    Q total = 0;
    YVec<Q> s = YVec<Q>::zero(req.quad.space());
    for (int i : r.fix.certified.elements()) s = s + r.fix.z.at(i);
    total = norm(s);
    EXPECT_EQ(total, r.fix.certified.size());
  }
}

TEST(DenseLift, ScaledQuadStaysInM) {
  const auto sp = SpaceDescriptor::l1_infinite();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto qd = gen_quad<Q>({sp, seed, GenMode::Boundary});
    const Q t = q(1, 100);
    EXPECT_TRUE(is_in_m4(Q(1 / (1 + 3 * t)) * qd).member);
  }
}

TEST(Audit, FlagsCorruptedResult) {
  FixRequest<Q> req{rquad<Q>(1, q(99, 100), q(1, 2), q(49, 100)), plus_one_reals(), IndexSet{1, 2},
                    q(1, 2)};
  auto res = uc_fix(req);
  res.z.at(2) = yv(SpaceDescriptor::reals(), {q(1, 2)});
  EXPECT_FALSE(audit_fix(req, res).ok);
}
