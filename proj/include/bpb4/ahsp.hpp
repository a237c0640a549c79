#pragma once

// Constructive fixes for quadruples in M: given (y_i) in M, a norm-one
// functional f and an active set A with f(y_i) close to 1 on A, produce
// (z_i) in M close to (y_i) with |sum_{i in C} z_i| = |C| for some C
// containing A.
//
// Routes:
//   singleton_fix  |A| = 1, any space
//   uc_fix         uniformly convex spaces (lp, R)
//   l1_fix         l1^n and finitely supported l1 with a sign-vector functional
//   cond3_fix      convex-combination form: ||sum alpha_i y_i|| close to 1
//   ahsp_fix       dispatcher; general l1 functionals go through cond3_fix
//   dense_lift     finitely supported l1 via truncation to l1^n

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bpb4/codomain.hpp"
#include "bpb4/index_set.hpp"
#include "bpb4/quadop.hpp"

namespace bpb4 {

template <Scalar S>
struct FixRequest {
  Quad<S> quad;
  Functional<S> functional;
  IndexSet active;  // nonempty subset of {1..4}
  S eps{};          // in (0, 1)
};

template <Scalar S>
struct FixResult {
  Quad<S> z;
  IndexSet certified;                // |sum_{i in certified} z_i| = |certified|
  std::array<S, 4> displacement{};   // |z_i - y_i|
  S displacement_bound{};            // strict bound certified by the route
  std::string route;                 // "singleton", "uc-k2", "l1-case3", ...
  std::vector<std::string> transforms;

  S max_displacement() const;
};

/// The tolerance functions of one space family, as exact closed forms.
///   rho            native function: eps/226 on l1; min{delta(eps)/2, eps/6} on lp, R
///   nu             rho^2
///   gamma_def      nu(eps/4)
///   eta            nu(eps/3)
///   gamma_from_eta eta(eps/48)
///   zeta           gamma_def(eps/2)
template <Scalar S>
class ConstantsSchedule {
 public:
  explicit ConstantsSchedule(SpaceDescriptor space);

  const SpaceDescriptor& space() const { return space_; }

  S rho(const S& eps) const;
  S nu(const S& eps) const;
  S gamma_def(const S& eps) const;
  S eta(const S& eps) const;
  S gamma_from_eta(const S& eps) const;
  S zeta(const S& eps) const;

  std::string describe() const;

 private:
  SpaceDescriptor space_;
};

/// Throws UnsupportedError for sup-norm spaces.
template <Scalar S>
ConstantsSchedule<S> schedule(const SpaceDescriptor& space);

/// |A| = 1 fix. Requires q in M and |y_j| > 1 - eps/6.
template <Scalar S>
FixResult<S> singleton_fix(const Quad<S>& q, int j, const S& eps);

/// The interval [min A, max A]; asserts f(y_i) > 1 - 2 delta on it.
template <Scalar S>
IndexSet expand_active(const Quad<S>& q, const Functional<S>& f, const IndexSet& active,
                       const S& delta);

template <Scalar S>
FixResult<S> uc_fix(const FixRequest<S>& req);

/// Splits x - y + z at P = {k : y(k) <= x(k) + z(k)}: returns w = z on P and
/// w = y - x off P. Requires 1 - s <= sum(x - y + z) and |x - y + z| <= 1 + t;
/// guarantees w >= z, |w - z| <= s + t and x - y + w >= 0.
template <Scalar S>
YVec<S> lemma_auxiliar(const YVec<S>& x, const YVec<S>& y, const YVec<S>& z, const S& s,
                       const S& t);

template <Scalar S>
FixResult<S> l1_fix(const FixRequest<S>& req);

template <Scalar S>
struct Cond3Result {
  IndexSet active;        // {i : f(y_i) > 1 - rho(eps)}
  S active_mass{};        // sum of alpha over active
  bool negated = false;   // the quadruple was negated before fixing
  Functional<S> functional;
  FixResult<S> fix;
};

/// Requires q in M, alpha convex and |sum alpha_i y_i| > 1 - nu(eps).
template <Scalar S>
Cond3Result<S> cond3_fix(const Quad<S>& q, const std::array<S, 4>& alpha, const S& eps);

/// Fix for any supported space and functional. The request's slack is checked
/// against rho(eps) for the native routes and gamma_def(eps) for the bridge.
template <Scalar S>
FixResult<S> ahsp_fix(const FixRequest<S>& req);

template <Scalar S>
struct DenseLiftResult {
  FixResult<S> fix;
  S t{};                          // truncation scale, 4t < eps/2
  std::size_t truncated_dim = 0;  // n of the l1^n the fix ran in
};

/// l1 fix through the minimal l1^n containing all supports; slack is checked
/// against zeta(eps) = gamma_def(eps/2).
template <Scalar S>
DenseLiftResult<S> dense_lift(const Quad<S>& q, const Functional<S>& f, const IndexSet& active,
                              const S& eps);

template <Scalar S>
struct FixAudit {
  bool ok = false;
  S membership_slack{};
  S attainment_defect{};  // |C| - |sum_{i in C} z_i|
  S active_defect{};      // |A| - |sum_{i in A} z_i|
  S max_displacement{};
  std::vector<std::string> failures;
};

/// Recomputes every postcondition of a fix from scratch.
template <Scalar S>
FixAudit<S> audit_fix(const FixRequest<S>& req, const FixResult<S>& res);

}  // namespace bpb4
