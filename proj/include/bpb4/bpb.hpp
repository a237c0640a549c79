#pragma once

// Bishop-Phelps-Bollobas corrections for operators l_inf^4 -> Y.
//
// correct() turns a norm-one T and a unit x0 with |T x0| > 1 - eta(eps) into
// a norm-one S attaining its norm at u0, with |S - T| < eps and
// |u0 - x0| < eps. extract_ahsp() runs the converse: from an externally
// supplied attaining pair it reads off an index set C and a quadruple z
// with |sum_{i in C} z_i| = |C|.

#include <string>
#include <vector>

#include "bpb4/ahsp.hpp"
#include "bpb4/cube4.hpp"
#include "bpb4/quadop.hpp"

namespace bpb4 {

template <Scalar S>
struct Residuals {
  S attainment{};         // |S u0| - 1
  S point_distance{};     // |u0 - x0|
  S operator_distance{};  // |S - T|
  S norm_defect{};        // |S| - 1

  bool operator==(const Residuals&) const = default;
};

template <Scalar S>
struct Certificate {
  Quad<S> T;
  Vec4<S> x0;
  Quad<S> S_op;
  Vec4<S> u0;
  S eps{};
  S eta{};                // precondition threshold used: |T x0| > 1 - eta
  Residuals<S> residuals;
  SignedPerm isometry;    // g with x0 = g(x'), x' in co{v1..v4}
  IndexSet active;        // A from the convex-combination fix, in the reduced frame
  std::string route;
};

template <Scalar S>
Residuals<S> compute_residuals(const Quad<S>& T, const Vec4<S>& x0, const Quad<S>& S_op,
                               const Vec4<S>& u0);

/// Throws DomainError when op_norm(T) or |x0| is not 1 within tolerance and
/// PreconditionError when |T x0| <= 1 - eta(eps).
template <Scalar S>
Certificate<S> correct(const Quad<S>& T, const Vec4<S>& x0, const S& eps);

template <Scalar S>
struct ExtractResult {
  IndexSet C;
  Quad<S> z;
  Vec4<S> flattened;     // (1, u0(2), u0(3), u0(4))
  Vec4<S> corrected;     // v0 from the close-face correction
  S mass{};              // sum of the weights of x0 over C
  Functional<S> functional;
};

/// Throws PreconditionError on any violated precondition.
template <Scalar S>
ExtractResult<S> extract_ahsp(const Quad<S>& T, const Vec4<S>& x0, const Quad<S>& S_op,
                              const Vec4<S>& u0, const S& eps);

struct CheckLine {
  std::string name;
  std::string value;
  bool ok = false;
};

template <Scalar S>
struct VerifyReport {
  bool pass = false;
  Residuals<S> recomputed;
  std::vector<CheckLine> checks;
};

/// Recomputes every residual from the operators and points; never throws
/// for malformed certificates, reporting them as failed checks instead.
template <Scalar S>
VerifyReport<S> verify_certificate(const Certificate<S>& cert);

}  // namespace bpb4
