#include "bpb4/ahsp.hpp"

#include <algorithm>

#include "bpb4/errors.hpp"

namespace bpb4 {
namespace {

template <Scalar S>
std::string fmt(const S& x) {
  return format_scalar(x);
}

template <Scalar S>
void require_eps(const S& eps, const char* what) {
  if (!(eps > 0) || !(eps < 1)) {
    throw DomainError(std::string(what) + ": eps must lie in (0, 1), got " + fmt(eps));
  }
}

template <Scalar S>
void require_member(const Quad<S>& q, const char* what) {
  const auto rep = is_in_m4(q);
  if (!rep.member) {
    throw PreconditionError(std::string(what) + ": quadruple is not in M (" + rep.witness +
                            " exceeds 1 by " + fmt(S(-rep.slack)) + ")");
  }
}

void require_active(const IndexSet& a, const char* what) {
  if (a.empty() || !a.subset_of(IndexSet::interval(1, 4))) {
    throw DomainError(std::string(what) + ": active set must be a nonempty subset of {1..4}, got " +
                      a.to_string());
  }
}

/// Strict lower bound f(y_i) > floor on every i in A.
template <Scalar S>
void require_slack(const Quad<S>& q, const Functional<S>& f, const IndexSet& a, const S& floor,
                   const char* what) {
  for (int i : a.elements()) {
    const S v = f(q.at(i));
    if (!(v > floor)) {
      throw PreconditionError(std::string(what) + ": f(y" + std::to_string(i) + ") = " + fmt(v) +
                              " is not above " + fmt(floor));
    }
  }
}

template <Scalar S>
S sum_norm(const Quad<S>& z, const IndexSet& c) {
  YVec<S> acc = YVec<S>::zero(z.space());
  for (int i : c.elements()) acc = acc + z.at(i);
  return norm(acc);
}

template <Scalar S>
bool strictly_below(const S& a, const S& b) {
  if constexpr (ScalarTraits<S>::exact) {
    return a < b;
  } else {
    return a < b + ScalarTraits<S>::tolerance();
  }
}

/// Fills displacements against the original quadruple and asserts the
/// postconditions every route guarantees.
template <Scalar S>
void finish(FixResult<S>& res, const Quad<S>& original, const char* what) {
  for (int i = 1; i <= 4; ++i) {
    res.displacement[static_cast<std::size_t>(i - 1)] = norm(res.z.at(i) - original.at(i));
  }
  const auto rep = is_in_m4(res.z);
  if (!rep.member) {
    throw InvariantError(std::string(what) + ": result left M at " + rep.witness);
  }
  const S attained = sum_norm(res.z, res.certified);
  if (!eq_tol(attained, S(res.certified.size()))) {
    throw InvariantError(std::string(what) + ": |sum over " + res.certified.to_string() +
                         "| = " + fmt(attained) + ", expected " +
                         std::to_string(res.certified.size()));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (!strictly_below(res.displacement[i], res.displacement_bound)) {
      throw InvariantError(std::string(what) + ": displacement of y" + std::to_string(i + 1) +
                           " is " + fmt(res.displacement[i]) + ", bound " +
                           fmt(res.displacement_bound));
    }
  }
}

IndexSet shift_set(const IndexSet& a, int r) {
  IndexSet out;
  for (int i : a.elements()) out.insert(i - r);
  return out;
}

template <Scalar S>
YVec<S> positive_part(const YVec<S>& y) {
  YVec<S> r = y;
  for (S& v : r.coords) {
    if (v < 0) v = 0;
  }
  return r;
}

/// Coordinatewise multiplication by the sign vector f; an involution.
template <Scalar S>
YVec<S> flip(const YVec<S>& y, const Functional<S>& f) {
  YVec<S> r = y;
  for (std::size_t k = 0; k < r.coords.size(); ++k) r.coords[k] = f.entry(k) * r.coords[k];
  return r;
}

template <Scalar S>
Functional<S> sum_functional(const SpaceDescriptor& space) {
  Functional<S> u;
  u.space = space;
  u.kind = FunctionalKind::SignVector;
  u.coords.assign(space.dim.value_or(0), S(1));
  return u;
}

template <Scalar S>
void require_sign_vector(const Functional<S>& f, const char* what) {
  if (f.kind != FunctionalKind::SignVector) {
    throw UnsupportedError(std::string(what) + ": needs a sign-vector functional");
  }
  dual_norm(f);
}

template <Scalar S>
void require_norm_one(const Functional<S>& f, const char* what) {
  const S n = dual_norm(f);
  if (!eq_tol(n, S(1))) {
    throw DomainError(std::string(what) + ": functional has norm " + fmt(n) + ", expected 1");
  }
}

template <Scalar S>
void validate_request(const FixRequest<S>& req, const char* what) {
  require_eps(req.eps, what);
  require_active(req.active, what);
  if (!(req.functional.space == req.quad.space())) {
    throw DomainError(std::string(what) + ": functional and quadruple live in different spaces");
  }
  require_member(req.quad, what);
}

}  // namespace

template <Scalar S>
S FixResult<S>::max_displacement() const {
  return *std::max_element(displacement.begin(), displacement.end());
}

// ---------------------------------------------------------------------------
// Constants

template <Scalar S>
ConstantsSchedule<S>::ConstantsSchedule(SpaceDescriptor space) : space_(std::move(space)) {
  validate(space_);
  if (space_.family == Family::Sup) {
    throw UnsupportedError("no tolerance schedule for " + space_.to_string());
  }
  if constexpr (ScalarTraits<S>::exact) {
    if (space_.family == Family::Lp) {
      throw UnsupportedError("lp schedules require the float backend");
    }
  }
}

template <Scalar S>
S ConstantsSchedule<S>::rho(const S& eps) const {
  if (!(eps > 0) || eps > 1) throw DomainError("schedule: eps must lie in (0, 1], got " + fmt(eps));
  if (space_.family == Family::L1) return eps / S(226);
  const S half_delta = modulus_convexity(space_, eps) / S(2);
  const S sixth = eps / S(6);
  return half_delta < sixth ? half_delta : sixth;
}

template <Scalar S>
S ConstantsSchedule<S>::nu(const S& eps) const {
  const S r = rho(eps);
  return r * r;
}

template <Scalar S>
S ConstantsSchedule<S>::gamma_def(const S& eps) const {
  return nu(eps / S(4));
}

template <Scalar S>
S ConstantsSchedule<S>::eta(const S& eps) const {
  return nu(eps / S(3));
}

template <Scalar S>
S ConstantsSchedule<S>::gamma_from_eta(const S& eps) const {
  return eta(eps / S(48));
}

template <Scalar S>
S ConstantsSchedule<S>::zeta(const S& eps) const {
  return gamma_def(eps / S(2));
}

template <Scalar S>
std::string ConstantsSchedule<S>::describe() const {
  const std::string r = space_.family == Family::L1 ? "rho(e) = e/226"
                                                    : "rho(e) = min{delta(e)/2, e/6}";
  return r +
         "; nu(e) = rho(e)^2; gamma_def(e) = nu(e/4); eta(e) = nu(e/3); "
         "gamma_from_eta(e) = eta(e/48); zeta(e) = gamma_def(e/2)";
}

template <Scalar S>
ConstantsSchedule<S> schedule(const SpaceDescriptor& space) {
  return ConstantsSchedule<S>(space);
}

// ---------------------------------------------------------------------------
// Singleton

template <Scalar S>
FixResult<S> singleton_fix(const Quad<S>& q, int j, const S& eps) {
  require_eps(eps, "singleton_fix");
  if (j < 1 || j > 4) throw DomainError("singleton_fix: index must lie in 1..4");
  require_member(q, "singleton_fix");
  const S nj = norm(q.at(j));
  if (!(nj > S(1) - eps / S(6))) {
    throw PreconditionError("singleton_fix: |y" + std::to_string(j) + "| = " + fmt(nj) +
                            " is not above 1 - eps/6");
  }

  const int r = j - 1;
  const Quad<S> ys = cyclic_shift(q, r);
  const YVec<S> z1 = ys.at(1) / norm(ys.at(1));
  const S a = eps / S(3);
  const std::array<S, 3> coef = {eps / S(3), eps / S(6), S(-eps / S(6))};

  Quad<S> zs = ys;
  zs.at(1) = z1;
  for (int i = 2; i <= 4; ++i) {
    zs.at(i) = (S(1) - a) * ys.at(i) + coef[static_cast<std::size_t>(i - 2)] * z1;
  }

  FixResult<S> res;
  res.z = cyclic_shift(zs, 8 - r);
  res.certified = IndexSet{j};
  res.displacement_bound = eps;
  res.route = "singleton";
  res.transforms = {"shift " + std::to_string(r), "unshift " + std::to_string(r)};
  finish(res, q, "singleton_fix");
  return res;
}

template <Scalar S>
IndexSet expand_active(const Quad<S>& q, const Functional<S>& f, const IndexSet& active,
                       const S& delta) {
  require_active(active, "expand_active");
  const IndexSet c = IndexSet::interval(active.min(), active.max());
  const S floor = S(1) - S(2) * delta;
  for (int i : c.elements()) {
    const S v = f(q.at(i));
    if (!(v > floor)) {
      throw InvariantError("expand_active: f(y" + std::to_string(i) + ") = " + fmt(v) +
                           " is not above 1 - 2 delta");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Uniformly convex spaces

template <Scalar S>
FixResult<S> uc_fix(const FixRequest<S>& req) {
  if (!req.quad.space().uniformly_convex()) {
    throw UnsupportedError("uc_fix: " + req.quad.space().to_string() + " is not uniformly convex");
  }
  validate_request(req, "uc_fix");
  require_norm_one(req.functional, "uc_fix");
  const auto sched = schedule<S>(req.quad.space());
  const S gamma = sched.rho(req.eps);
  require_slack(req.quad, req.functional, req.active, S(S(1) - gamma), "uc_fix");

  if (req.active.size() == 1) return singleton_fix(req.quad, req.active.min(), req.eps);

  const int r = req.active.min() - 1;
  const Quad<S> ys = cyclic_shift(req.quad, r);
  const IndexSet shifted = shift_set(req.active, r);
  const int k = shifted.max();
  expand_active(ys, req.functional, shifted, gamma);

  const YVec<S> u = ys.at(1) / norm(ys.at(1));
  Quad<S> zs = ys;
  for (int i = 1; i <= k; ++i) zs.at(i) = u;
  if (k == 2) {
    const S a = gamma / (S(1) + gamma);
    const S b = gamma / (S(2) * (S(1) + gamma));
    zs.at(3) = (S(1) - a) * ys.at(3) + b * u;
    zs.at(4) = (S(1) - a) * ys.at(4) - b * u;
  }

  FixResult<S> res;
  res.z = cyclic_shift(zs, 8 - r);
  res.certified = IndexSet::interval(req.active.min(), req.active.max());
  res.displacement_bound = req.eps;
  res.route = "uc-k" + std::to_string(k);
  res.transforms = {"shift " + std::to_string(r), "unshift " + std::to_string(r)};
  finish(res, req.quad, "uc_fix");
  return res;
}

// ---------------------------------------------------------------------------
// l1

template <Scalar S>
YVec<S> lemma_auxiliar(const YVec<S>& x, const YVec<S>& y, const YVec<S>& z, const S& s,
                       const S& t) {
  if (x.space.family != Family::L1) throw UnsupportedError("lemma_auxiliar: l1 spaces only");
  if (s < 0 || t < 0) throw DomainError("lemma_auxiliar: s and t must be nonnegative");
  const YVec<S> w0 = x - y + z;
  S total(0);
  for (const S& v : w0.coords) total += v;
  if (!le_tol(S(S(1) - s), total) || !le_tol(norm(w0), S(S(1) + t))) {
    throw PreconditionError("lemma_auxiliar: need 1 - s <= sum(x - y + z) and |x - y + z| <= 1 + t");
  }

  const std::size_t n = std::max({x.extent(), y.extent(), z.extent()});
  YVec<S> w = YVec<S>::zero(x.space);
  w.coords.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    w.coords[k] = y.at(k) <= x.at(k) + z.at(k) ? z.at(k) : S(y.at(k) - x.at(k));
  }

  const YVec<S> lifted = x - y + w;
  for (std::size_t k = 0; k < n; ++k) {
    if (!le_tol(z.at(k), w.at(k)) || !le_tol(S(0), lifted.at(k))) {
      throw InvariantError("lemma_auxiliar: positivity failed at coordinate " + std::to_string(k));
    }
  }
  if (!le_tol(norm(w - z), S(s + t))) throw InvariantError("lemma_auxiliar: |w - z| exceeds s + t");
  return w;
}

template <Scalar S>
FixResult<S> l1_fix(const FixRequest<S>& req) {
  const SpaceDescriptor& space = req.quad.space();
  if (space.family != Family::L1) throw UnsupportedError("l1_fix: l1 spaces only");
  validate_request(req, "l1_fix");
  require_sign_vector(req.functional, "l1_fix");
  const auto sched = schedule<S>(space);
  const S rho = sched.rho(req.eps);
  require_slack(req.quad, req.functional, req.active, S(S(1) - rho), "l1_fix");

  if (req.active.size() == 1) return singleton_fix(req.quad, req.active.min(), req.eps);

  const int r = req.active.min() - 1;
  const Quad<S> ys = cyclic_shift(req.quad, r);
  const IndexSet shifted = shift_set(req.active, r);
  const Functional<S>& f = req.functional;

  Quad<S> a = ys;
  for (int i = 1; i <= 4; ++i) a.at(i) = flip(ys.at(i), f);
  const IndexSet c = expand_active(a, sum_functional<S>(space), shifted, rho);
  const int k = c.max();

  std::array<YVec<S>, 4> b;
  for (int i = 1; i <= 4; ++i) b[static_cast<std::size_t>(i - 1)] = positive_part(a.at(i));
  const auto B = [&](int i) -> const YVec<S>& { return b[static_cast<std::size_t>(i - 1)]; };
  const YVec<S> e1 = YVec<S>::unit(space, 0);

  Quad<S> zs = a;
  S bound;
  if (k == 2) {
    std::array<YVec<S>, 4> x = {B(1) + (S(1) - norm(B(1))) * e1, B(2) + (S(1) - norm(B(2))) * e1,
                                a.at(3), a.at(4)};
    const S c8 = S(1) / (S(1) + S(8) * rho);
    const S c4 = S(1) / (S(1) + S(4) * rho);
    std::array<YVec<S>, 4> y;
    for (std::size_t i = 0; i < 4; ++i) {
      y[i] = i < 2 ? c8 * x[i] + (S(1) - c8) * e1 : c8 * x[i];
    }
    for (std::size_t i = 0; i < 4; ++i) {
      zs.ys[i] = i < 3 ? c4 * y[i] + (S(1) - c4) * e1 : c4 * y[i];
    }
    bound = S(28) * rho;
  } else if (k == 3) {
    std::array<YVec<S>, 4> x = {lemma_auxiliar(B(3), B(2), B(1), S(S(4) * rho), S(S(6) * rho)), B(2),
                                B(3), a.at(4)};
    const S c36 = S(1) / (S(1) + S(36) * rho);
    const S c14 = S(1) / (S(1) + S(14) * rho);
    std::array<YVec<S>, 4> y;
    for (std::size_t i = 0; i < 4; ++i) {
      y[i] = i < 3 ? c36 * x[i] + (S(1) - norm(x[i]) * c36) * e1 : c36 * x[i];
    }
    for (std::size_t i = 0; i < 4; ++i) {
      zs.ys[i] = i < 3 ? c14 * y[i] + (S(1) - c14) * e1 : c14 * y[i];
    }
    bound = S(114) * rho;
  } else {
    const YVec<S> x1 = lemma_auxiliar(B(3), B(2), B(1), S(S(4) * rho), S(S(6) * rho));
    const YVec<S> x4 = lemma_auxiliar(B(1), B(3), B(4), S(S(4) * rho), S(S(6) * rho));
    std::array<YVec<S>, 4> y = {lemma_auxiliar(B(4), B(2), x1, S(S(4) * rho), S(S(16) * rho)), B(2),
                                B(3), lemma_auxiliar(B(2), B(3), x4, S(S(4) * rho), S(S(16) * rho))};
    const S c96 = S(1) / (S(1) + S(96) * rho);
    for (std::size_t i = 0; i < 4; ++i) {
      zs.ys[i] = c96 * y[i] + (S(1) - norm(y[i]) * c96) * e1;
    }
    bound = S(226) * rho;
  }

  // In the flipped frame the certified vectors are nonnegative with sum 1.
  for (int i = 1; i <= k; ++i) {
    S total(0);
    for (const S& v : zs.at(i).coords) {
      if (!le_tol(S(0), v)) throw InvariantError("l1_fix: negative coordinate in z" + std::to_string(i));
      total += v;
    }
    if (!eq_tol(total, S(1))) throw InvariantError("l1_fix: z" + std::to_string(i) + " off the face");
  }

  for (auto& v : zs.ys) {
    v = flip(v, f);
    v.trim();
  }

  FixResult<S> res;
  res.z = cyclic_shift(zs, 8 - r);
  res.certified = IndexSet::interval(req.active.min(), req.active.max());
  res.displacement_bound = bound;
  res.route = "l1-case" + std::to_string(k - 1);
  res.transforms = {"shift " + std::to_string(r), "sign flip", "sign flip",
                    "unshift " + std::to_string(r)};
  finish(res, req.quad, "l1_fix");
  return res;
}

// ---------------------------------------------------------------------------
// Convex-combination form and dispatch

template <Scalar S>
Cond3Result<S> cond3_fix(const Quad<S>& q, const std::array<S, 4>& alpha, const S& eps) {
  require_eps(eps, "cond3_fix");
  const SpaceDescriptor& space = q.space();
  require_member(q, "cond3_fix");
  S total(0);
  for (const S& a : alpha) {
    if (a < 0) throw DomainError("cond3_fix: weights must be nonnegative");
    total += a;
  }
  if (!eq_tol(total, S(1))) throw DomainError("cond3_fix: weights must sum to 1, got " + fmt(total));

  const auto sched = schedule<S>(space);
  const S rho = sched.rho(eps);
  const S nu = sched.nu(eps);

  YVec<S> s = YVec<S>::zero(space);
  for (int i = 1; i <= 4; ++i) s = s + alpha[static_cast<std::size_t>(i - 1)] * q.at(i);
  const S ns = norm(s);
  if (!(ns > S(1) - nu)) {
    throw PreconditionError("cond3_fix: |sum alpha_i y_i| = " + fmt(ns) + " is not above 1 - nu(eps)");
  }

  Cond3Result<S> out;
  Quad<S> work = q;
  for (const S& v : s.coords) {
    if (v != 0) {
      out.negated = v < 0;
      break;
    }
  }
  if (out.negated) {
    work = negate(q);
    s = -s;
  }

  out.functional = support_functional(s);
  for (int i = 1; i <= 4; ++i) {
    if (out.functional(work.at(i)) > S(1) - rho) out.active.insert(i);
  }
  out.active_mass = S(0);
  for (int i : out.active.elements()) out.active_mass += alpha[static_cast<std::size_t>(i - 1)];
  if (out.active.empty() || !le_tol(S(S(1) - nu / rho), out.active_mass)) {
    throw InvariantError("cond3_fix: active mass " + fmt(out.active_mass) + " below 1 - nu/rho");
  }

  const FixRequest<S> inner{work, out.functional, out.active, eps};
  if (space.family == Family::L1) {
    out.fix = l1_fix(inner);
  } else if (space.uniformly_convex()) {
    out.fix = uc_fix(inner);
  } else {
    throw UnsupportedError("cond3_fix: no fix for " + space.to_string());
  }

  if (out.negated) {
    out.fix.z = negate(out.fix.z);
    out.fix.transforms.insert(out.fix.transforms.begin(), "negate");
    out.fix.transforms.push_back("negate");
  }
  return out;
}

template <Scalar S>
FixResult<S> ahsp_fix(const FixRequest<S>& req) {
  const SpaceDescriptor& space = req.quad.space();
  if (space.uniformly_convex()) return uc_fix(req);
  if (space.family != Family::L1) throw UnsupportedError("ahsp_fix: no fix for " + space.to_string());
  if (req.functional.kind == FunctionalKind::SignVector) return l1_fix(req);

  validate_request(req, "ahsp_fix");
  const S fn = dual_norm(req.functional);
  if (!le_tol(fn, S(1))) throw DomainError("ahsp_fix: functional norm " + fmt(fn) + " exceeds 1");
  const auto sched = schedule<S>(space);
  require_slack(req.quad, req.functional, req.active, S(S(1) - sched.gamma_def(req.eps)), "ahsp_fix");

  std::array<S, 4> alpha{};
  const S w = S(1) / S(req.active.size());
  for (int i : req.active.elements()) alpha[static_cast<std::size_t>(i - 1)] = w;
  Cond3Result<S> c3 = cond3_fix(req.quad, alpha, S(req.eps / S(4)));
  if (!req.active.subset_of(c3.fix.certified)) {
    throw InvariantError("ahsp_fix: certified set " + c3.fix.certified.to_string() +
                         " misses part of " + req.active.to_string());
  }
  FixResult<S> res = std::move(c3.fix);
  res.route = "bridge/" + res.route;
  res.transforms.insert(res.transforms.begin(), "uniform weights on " + req.active.to_string());
  return res;
}

template <Scalar S>
DenseLiftResult<S> dense_lift(const Quad<S>& q, const Functional<S>& f, const IndexSet& active,
                              const S& eps) {
  const SpaceDescriptor& space = q.space();
  if (space.family != Family::L1) throw UnsupportedError("dense_lift: l1 spaces only");
  validate_request(FixRequest<S>{q, f, active, eps}, "dense_lift");
  const auto sched = schedule<S>(space);
  const S gamma = sched.gamma_def(eps / S(2));
  require_slack(q, f, active, S(S(1) - gamma), "dense_lift");

  S slack = eps / S(2);
  for (int i : active.elements()) {
    const S m = f(q.at(i)) - S(1) + gamma;
    if (m < slack) slack = m;
  }

  DenseLiftResult<S> out;
  out.t = slack / S(8);
  std::size_t n = 1;
  for (const auto& y : q.ys) {
    for (std::size_t k = y.extent(); k > 0; --k) {
      if (y.coords[k - 1] != 0) {
        n = std::max(n, k);
        break;
      }
    }
  }
  out.truncated_dim = n;

  const SpaceDescriptor small = SpaceDescriptor::l1(n);
  const S scale = S(1) / (S(1) + S(3) * out.t);
  Quad<S> yq;
  for (int i = 1; i <= 4; ++i) {
    std::vector<S> c(n, S(0));
    for (std::size_t k = 0; k < n; ++k) c[k] = scale * q.at(i).at(k);
    yq.at(i) = YVec<S>(small, std::move(c));
  }
  Functional<S> g;
  g.space = small;
  g.kind = f.kind;
  for (std::size_t k = 0; k < n; ++k) g.coords.push_back(f.entry(k));
  if (g.kind == FunctionalKind::DualCoordinates) {
    const S gn = dual_norm(g);
    if (gn == 0) throw PreconditionError("dense_lift: functional vanishes on the supports");
    for (S& v : g.coords) v = v / gn;
  }

  const FixRequest<S> inner{yq, g, active, eps / S(2)};
  FixResult<S> sub = g.kind == FunctionalKind::SignVector ? l1_fix(inner) : ahsp_fix(inner);

  FixResult<S> res;
  for (int i = 1; i <= 4; ++i) {
    std::vector<S> c = sub.z.at(i).coords;
    c.resize(space.dim.value_or(n), S(0));
    res.z.at(i) = YVec<S>(space, std::move(c));
    res.z.at(i).trim();
  }
  res.certified = sub.certified;
  res.displacement_bound = eps;
  res.route = "dense-lift/" + sub.route;
  res.transforms = {"truncate to " + small.to_string() + ", scale 1/(1+3t), t = " + fmt(out.t)};
  res.transforms.insert(res.transforms.end(), sub.transforms.begin(), sub.transforms.end());
  res.transforms.push_back("embed into " + space.to_string());
  finish(res, q, "dense_lift");
  out.fix = std::move(res);
  return out;
}

template <Scalar S>
FixAudit<S> audit_fix(const FixRequest<S>& req, const FixResult<S>& res) {
  FixAudit<S> a;
  const auto rep = is_in_m4(res.z);
  a.membership_slack = rep.slack;
  if (!rep.member) a.failures.push_back("result not in M (" + rep.witness + ")");
  if (!(res.z.space() == req.quad.space())) a.failures.push_back("result changed space");
  if (!req.active.subset_of(res.certified)) {
    a.failures.push_back("certified set " + res.certified.to_string() + " does not contain " +
                         req.active.to_string());
  }
  a.attainment_defect = S(res.certified.size()) - sum_norm(res.z, res.certified);
  a.active_defect = S(req.active.size()) - sum_norm(res.z, req.active);
  if (!eq_tol(a.attainment_defect, S(0))) a.failures.push_back("attainment defect on certified set");
  if (!eq_tol(a.active_defect, S(0))) a.failures.push_back("attainment defect on active set");
  a.max_displacement = S(0);
  for (int i = 1; i <= 4; ++i) {
    const S d = norm(res.z.at(i) - req.quad.at(i));
    if (d > a.max_displacement) a.max_displacement = d;
  }
  if (!strictly_below(a.max_displacement, req.eps)) {
    a.failures.push_back("displacement " + fmt(a.max_displacement) + " not below eps");
  }
  a.ok = a.failures.empty();
  return a;
}

#define BPB4_INSTANTIATE(S)                                                                      \
  template struct FixResult<S>;                                                                  \
  template class ConstantsSchedule<S>;                                                           \
  template ConstantsSchedule<S> schedule<S>(const SpaceDescriptor&);                             \
  template FixResult<S> singleton_fix<S>(const Quad<S>&, int, const S&);                         \
  template IndexSet expand_active<S>(const Quad<S>&, const Functional<S>&, const IndexSet&,     \
                                     const S&);                                                  \
  template FixResult<S> uc_fix<S>(const FixRequest<S>&);                                         \
  template YVec<S> lemma_auxiliar<S>(const YVec<S>&, const YVec<S>&, const YVec<S>&, const S&,  \
                                     const S&);                                                  \
  template FixResult<S> l1_fix<S>(const FixRequest<S>&);                                         \
  template Cond3Result<S> cond3_fix<S>(const Quad<S>&, const std::array<S, 4>&, const S&);       \
  template FixResult<S> ahsp_fix<S>(const FixRequest<S>&);                                       \
  template DenseLiftResult<S> dense_lift<S>(const Quad<S>&, const Functional<S>&,               \
                                            const IndexSet&, const S&);                          \
  template FixAudit<S> audit_fix<S>(const FixRequest<S>&, const FixResult<S>&);

BPB4_INSTANTIATE(Rational)
BPB4_INSTANTIATE(double)

#undef BPB4_INSTANTIATE

}  // namespace bpb4
