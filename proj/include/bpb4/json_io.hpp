#pragma once

// JSON forms of spaces, vectors, quadruples, fix requests/results and
// certificates. Field order is fixed so documents diff cleanly.
//
//   space       {"family": "l1"|"lp"|"sup"|"r", "p": 2, "dim": 3 | "inf"}
//   scalar      rational backend: "p/q" string; float backend: number.
//               Readers accept either form in both backends.
//   vector      finite: dense array; finitely supported l1: [[index, value], ...]
//   quadruple   {"space", "ys": [four vectors]}; readers also take a bare array

#include "json.hpp"

#include "bpb4/ahsp.hpp"
#include "bpb4/bpb.hpp"

namespace bpb4 {

using Json = nlohmann::ordered_json;

Json space_to_json(const SpaceDescriptor& space);
SpaceDescriptor space_from_json(const Json& j);

template <Scalar S>
Json scalar_to_json(const S& x);
template <>
Json scalar_to_json<Rational>(const Rational& x);
template <>
Json scalar_to_json<double>(const double& x);
template <Scalar S>
S scalar_from_json(const Json& j);

template <Scalar S>
Json yvec_to_json(const YVec<S>& y);
template <Scalar S>
YVec<S> yvec_from_json(const SpaceDescriptor& space, const Json& j);

template <Scalar S>
Json quad_to_json(const Quad<S>& q);
template <Scalar S>
Quad<S> quad_from_json(const SpaceDescriptor& space, const Json& j);

template <Scalar S>
Json vec4_to_json(const Vec4<S>& v);
template <Scalar S>
Vec4<S> vec4_from_json(const Json& j);

template <Scalar S>
Json functional_to_json(const Functional<S>& f);
template <Scalar S>
Functional<S> functional_from_json(const SpaceDescriptor& space, const Json& j);

Json index_set_to_json(const IndexSet& s);
IndexSet index_set_from_json(const Json& j);

Json signed_perm_to_json(const SignedPerm& g);
SignedPerm signed_perm_from_json(const Json& j);

/// {"backend", "space", "quad", "functional", "active", "eps"}
template <Scalar S>
Json fix_request_to_json(const FixRequest<S>& req);
template <Scalar S>
FixRequest<S> fix_request_from_json(const Json& j);

/// {"z", "certified", "displacement", "displacement_bound", "route", "transforms"}
template <Scalar S>
Json fix_result_to_json(const FixResult<S>& res);

/// {"backend", "space", "eps", "eta", "T", "x0", "S", "u0", "residuals",
///  "isometry", "active", "route"}
template <Scalar S>
Json certificate_to_json(const Certificate<S>& cert);
template <Scalar S>
Certificate<S> certificate_from_json(const Json& j);

/// A BPB instance {"space", "T", "x0"} with optional "eps".
template <Scalar S>
struct Instance {
  Quad<S> T;
  Vec4<S> x0;
  std::optional<S> eps;
};

template <Scalar S>
Json instance_to_json(const Instance<S>& inst);
template <Scalar S>
Instance<S> instance_from_json(const Json& j);

/// "rational" or "float" from a document's "backend" field (default rational).
std::string backend_of(const Json& j);

}  // namespace bpb4
