#include "bpb4/bpb.hpp"

#include "bpb4/errors.hpp"

namespace bpb4 {
namespace {

template <Scalar S>
std::string fmt(const S& x) {
  return format_scalar(x);
}

template <Scalar S>
bool strictly_below(const S& a, const S& b) {
  if constexpr (ScalarTraits<S>::exact) {
    return a < b;
  } else {
    return a < b + ScalarTraits<S>::tolerance();
  }
}

/// Unit check with tolerance; returns the renormalized quadruple.
template <Scalar S>
Quad<S> unit_operator(const Quad<S>& T, const char* what) {
  const S n = op_norm(T);
  if (!eq_tol(n, S(1))) {
    throw DomainError(std::string(what) + ": operator norm is " + fmt(n) + ", expected 1");
  }
  return n == 1 ? T : S(S(1) / n) * T;
}

template <Scalar S>
Vec4<S> unit_point(const Vec4<S>& x, const char* what) {
  const S n = sup_norm(x);
  if (!eq_tol(n, S(1))) {
    throw DomainError(std::string(what) + ": point norm is " + fmt(n) + ", expected 1");
  }
  return n == 1 ? x : (S(1) / n) * x;
}

}  // namespace

template <Scalar S>
Residuals<S> compute_residuals(const Quad<S>& T, const Vec4<S>& x0, const Quad<S>& S_op,
                               const Vec4<S>& u0) {
  Residuals<S> r;
  r.attainment = norm(apply(S_op, u0)) - S(1);
  r.point_distance = sup_norm(u0 - x0);
  r.operator_distance = op_norm(S_op - T);
  r.norm_defect = op_norm(S_op) - S(1);
  return r;
}

template <Scalar S>
Certificate<S> correct(const Quad<S>& T_in, const Vec4<S>& x0_in, const S& eps) {
  if (!(eps > 0) || !(eps < 1)) throw DomainError("correct: eps must lie in (0, 1)");
  const Quad<S> T = unit_operator(T_in, "correct");
  const Vec4<S> x0 = unit_point(x0_in, "correct");
  const auto sched = schedule<S>(T.space());
  const S eta = sched.eta(eps);
  const S image = norm(apply(T, x0));
  if (!(image > S(1) - eta)) {
    throw PreconditionError("correct: |T x0| = " + fmt(image) + " is not above 1 - eta(eps) = " +
                            fmt(S(S(1) - eta)));
  }

  const BaseReduction<S> red = reduce_to_base(x0);
  const SignedPerm& g = red.isometry;
  const Quad<S> T_red = precompose(T, g);
  std::array<S, 4> alpha = coords(red.base_point);
  if constexpr (!ScalarTraits<S>::exact) {
    // Rounding can leave weights of order 1e-17 below zero.
    for (S& a : alpha) {
      if (a < 0 && le_tol(S(0), a)) a = 0;
    }
  }

  const Cond3Result<S> c3 = cond3_fix(T_red, alpha, S(eps / S(3)));
  S mass(0);
  Vec4<S> u_red;
  for (int i : c3.active.elements()) {
    const S& a = alpha[static_cast<std::size_t>(i - 1)];
    mass += a;
    u_red = u_red + a * vertex<S>(i);
  }
  u_red = (S(1) / mass) * u_red;

  Certificate<S> cert;
  cert.T = T;
  cert.x0 = x0;
  cert.S_op = precompose(c3.fix.z, g.inverse());
  cert.u0 = g.apply(u_red);
  cert.eps = eps;
  cert.eta = eta;
  cert.isometry = g;
  cert.active = c3.active;
  cert.route = c3.fix.route;
  cert.residuals = compute_residuals(cert.T, cert.x0, cert.S_op, cert.u0);

  const auto& r = cert.residuals;
  if (!eq_tol(r.attainment, S(0)) || !eq_tol(r.norm_defect, S(0)) ||
      !strictly_below(r.point_distance, eps) || !strictly_below(r.operator_distance, eps)) {
    throw InvariantError("correct: certificate residuals out of bounds");
  }
  return cert;
}

template <Scalar S>
ExtractResult<S> extract_ahsp(const Quad<S>& T, const Vec4<S>& x0, const Quad<S>& S_op,
                              const Vec4<S>& u0, const S& eps) {
  const auto fail = [](const std::string& msg) { throw PreconditionError("extract_ahsp: " + msg); };
  if (!(eps > 0) || !(eps < 1)) fail("eps must lie in (0, 1)");
  const S tn = op_norm(T);
  if (!eq_tol(tn, S(1))) fail("op_norm(T) = " + fmt(tn) + ", expected 1");
  if (!eq_tol(op_norm(S_op), S(1))) fail("op_norm(S) is not 1");
  if (!in_base_simplex(x0)) fail("x0 is not in co{v1..v4}");
  if (!eq_tol(sup_norm(u0), S(1))) fail("|u0| is not 1");
  if (!eq_tol(norm(apply(S_op, u0)), S(1))) fail("S does not attain its norm at u0");
  const S twelfth = eps / S(12);
  if (!(sup_norm(u0 - x0) < twelfth)) fail("|u0 - x0| is not below eps/12");
  // The division by |T| is kept although |T| = 1 is required.
  const Quad<S> T_unit = S(S(1) / tn) * T;
  if (!(op_norm(S_op - T_unit) < twelfth)) fail("|S - T/|T|| is not below eps/12");

  ExtractResult<S> out;
  out.flattened = u0;
  out.flattened[0] = S(1);
  if (!eq_tol(norm(apply(S_op, out.flattened)), S(1))) {
    throw InvariantError("extract_ahsp: S does not attain at the flattened point");
  }

  const CloseFaceResult<S> cf = close_face_correct(x0, out.flattened, twelfth);
  out.corrected = cf.corrected;
  out.functional = support_functional(apply(S_op, out.flattened));
  out.z = S_op;

  const std::array<S, 4> alpha = coords(x0);
  out.mass = S(0);
  for (int i = 1; i <= 4; ++i) {
    if (cf.gamma[static_cast<std::size_t>(i - 1)] != 0) {
      out.C.insert(i);
      out.mass += alpha[static_cast<std::size_t>(i - 1)];
    }
  }

  if (!(out.mass > S(1) - eps)) throw InvariantError("extract_ahsp: weight of C not above 1 - eps");
  const S sixth = eps / S(6);
  for (int i = 1; i <= 4; ++i) {
    if (!strictly_below(norm(out.z.at(i) - T.at(i)), sixth)) {
      throw InvariantError("extract_ahsp: z" + std::to_string(i) + " moved by eps/6 or more");
    }
  }
  YVec<S> sum = YVec<S>::zero(S_op.space());
  for (int i : out.C.elements()) sum = sum + out.z.at(i);
  if (!eq_tol(norm(sum), S(out.C.size()))) {
    throw InvariantError("extract_ahsp: |sum_{i in C} z_i| differs from |C|");
  }
  return out;
}

template <Scalar S>
VerifyReport<S> verify_certificate(const Certificate<S>& cert) {
  VerifyReport<S> rep;
  auto add = [&](std::string name, const std::string& value, bool ok) {
    rep.checks.push_back({std::move(name), value, ok});
  };
  try {
    const Residuals<S> r = compute_residuals(cert.T, cert.x0, cert.S_op, cert.u0);
    rep.recomputed = r;
    add("|S u0| = 1", fmt(r.attainment), eq_tol(r.attainment, S(0)));
    add("|S| = 1", fmt(r.norm_defect), eq_tol(r.norm_defect, S(0)));
    add("|u0 - x0| < eps", fmt(r.point_distance), strictly_below(r.point_distance, cert.eps));
    add("|S - T| < eps", fmt(r.operator_distance), strictly_below(r.operator_distance, cert.eps));
    const S tn = op_norm(cert.T);
    add("|T| = 1", fmt(tn), eq_tol(tn, S(1)));
    const S xn = sup_norm(cert.x0);
    add("|x0| = 1", fmt(xn), eq_tol(xn, S(1)));
    const S un = sup_norm(cert.u0);
    add("|u0| = 1", fmt(un), eq_tol(un, S(1)));
    add("0 < eps < 1", fmt(cert.eps), cert.eps > 0 && cert.eps < 1);
    const auto& st = cert.residuals;
    const bool same = eq_tol(st.attainment, r.attainment) && eq_tol(st.point_distance, r.point_distance) &&
                      eq_tol(st.operator_distance, r.operator_distance) &&
                      eq_tol(st.norm_defect, r.norm_defect);
    add("stored residuals match", same ? "yes" : "no", same);
  } catch (const std::exception& e) {
    add("certificate well-formed", e.what(), false);
  }
  rep.pass = !rep.checks.empty();
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.ok;
  return rep;
}

#define BPB4_INSTANTIATE(S)                                                                     \
  template struct Residuals<S>;                                                                 \
  template Residuals<S> compute_residuals<S>(const Quad<S>&, const Vec4<S>&, const Quad<S>&,  \
                                             const Vec4<S>&);                                   \
  template Certificate<S> correct<S>(const Quad<S>&, const Vec4<S>&, const S&);                \
  template ExtractResult<S> extract_ahsp<S>(const Quad<S>&, const Vec4<S>&, const Quad<S>&,   \
                                            const Vec4<S>&, const S&);                          \
  template VerifyReport<S> verify_certificate<S>(const Certificate<S>&);

BPB4_INSTANTIATE(Rational)
BPB4_INSTANTIATE(double)

#undef BPB4_INSTANTIATE

}  // namespace bpb4
