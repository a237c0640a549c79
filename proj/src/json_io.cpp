#include "bpb4/json_io.hpp"

#include "bpb4/errors.hpp"

namespace bpb4 {
namespace {

std::string family_name(Family f) {
  switch (f) {
    case Family::L1:
      return "l1";
    case Family::Lp:
      return "lp";
    case Family::Sup:
      return "sup";
    case Family::Reals:
      return "r";
  }
  return "?";
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

Json space_to_json(const SpaceDescriptor& space) {
  Json j;
  j["family"] = family_name(space.family);
  if (space.family == Family::Lp) j["p"] = space.p;
  if (space.dim) {
    j["dim"] = *space.dim;
  } else {
    j["dim"] = "inf";
  }
  return j;
}

SpaceDescriptor space_from_json(const Json& j) {
  if (j.is_string()) return SpaceDescriptor::parse(j.get<std::string>());
  const std::string fam = field(j, "family").get<std::string>();
  SpaceDescriptor sp;
  if (fam == "r") {
    sp = SpaceDescriptor::reals();
  } else if (fam == "l1" || fam == "lp" || fam == "sup") {
    const Json& d = field(j, "dim");
    const bool inf = d.is_string() && d.get<std::string>() == "inf";
    if (fam == "l1") {
      sp = inf ? SpaceDescriptor::l1_infinite() : SpaceDescriptor::l1(d.get<std::size_t>());
    } else if (inf) {
      throw DomainError("only l1 may be infinite-dimensional");
    } else if (fam == "lp") {
      sp = SpaceDescriptor::lp(field(j, "p").get<double>(), d.get<std::size_t>());
    } else {
      sp = SpaceDescriptor::sup(d.get<std::size_t>());
    }
  } else {
    throw std::invalid_argument("unknown space family '" + fam + "'");
  }
  validate(sp);
  return sp;
}

template <>
Json scalar_to_json<Rational>(const Rational& x) {
  return format_scalar(x);
}
template <>
Json scalar_to_json<double>(const double& x) {
  return x;
}

template <Scalar S>
S scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
  if (j.is_number()) return parse_scalar<S>(j.dump());
  throw std::invalid_argument("expected a number or a \"p/q\" string, got " + j.dump());
}

template <Scalar S>
Json yvec_to_json(const YVec<S>& y) {
  Json arr = Json::array();
  if (y.space.infinite()) {
    for (std::size_t k = 0; k < y.extent(); ++k) {
      if (y.coords[k] != 0) arr.push_back(Json::array({k, scalar_to_json(y.coords[k])}));
    }
  } else {
    for (const S& v : y.coords) arr.push_back(scalar_to_json(v));
  }
  return arr;
}

template <Scalar S>
YVec<S> yvec_from_json(const SpaceDescriptor& space, const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector must be an array");
  std::vector<S> c;
  if (space.infinite()) {
    for (const Json& e : j) {
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("finitely supported vectors are [[index, value], ...]");
      }
      const std::size_t k = e[0].get<std::size_t>();
      if (k >= c.size()) c.resize(k + 1, S(0));
      c[k] = scalar_from_json<S>(e[1]);
    }
  } else {
    for (const Json& e : j) c.push_back(scalar_from_json<S>(e));
  }
  YVec<S> y(space, std::move(c));
  y.trim();
  return y;
}

template <Scalar S>
Json quad_to_json(const Quad<S>& q) {
  Json j;
  j["space"] = space_to_json(q.space());
  Json arr = Json::array();
  for (const auto& y : q.ys) arr.push_back(yvec_to_json(y));
  j["ys"] = std::move(arr);
  return j;
}

template <Scalar S>
Quad<S> quad_from_json(const SpaceDescriptor& space, const Json& j) {
  const Json* ys_json = &j;
  if (j.is_object()) {
    if (j.contains("space") && !(space_from_json(j.at("space")) == space)) {
      throw DomainError("quadruple space differs from the document space");
    }
    ys_json = &field(j, "ys");
  }
  if (!ys_json->is_array() || ys_json->size() != 4) {
    throw std::invalid_argument("quadruple must have 4 vectors");
  }
  std::array<YVec<S>, 4> ys;
  for (std::size_t i = 0; i < 4; ++i) ys[i] = yvec_from_json<S>(space, (*ys_json)[i]);
  return Quad<S>(std::move(ys));
}

template <Scalar S>
Json vec4_to_json(const Vec4<S>& v) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < 4; ++i) arr.push_back(scalar_to_json(v[i]));
  return arr;
}

template <Scalar S>
Vec4<S> vec4_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("point must have 4 coordinates");
  Vec4<S> v;
  for (std::size_t i = 0; i < 4; ++i) v[i] = scalar_from_json<S>(j[i]);
  return v;
}

template <Scalar S>
Json functional_to_json(const Functional<S>& f) {
  Json j;
  j["kind"] = f.kind == FunctionalKind::SignVector ? "sign" : "dual";
  Json arr = Json::array();
  for (const S& v : f.coords) arr.push_back(scalar_to_json(v));
  j["coords"] = std::move(arr);
  return j;
}

template <Scalar S>
Functional<S> functional_from_json(const SpaceDescriptor& space, const Json& j) {
  Functional<S> f;
  f.space = space;
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "sign") {
    f.kind = FunctionalKind::SignVector;
  } else if (kind == "dual") {
    f.kind = FunctionalKind::DualCoordinates;
  } else {
    throw std::invalid_argument("functional kind must be \"sign\" or \"dual\"");
  }
  for (const Json& e : field(j, "coords")) f.coords.push_back(scalar_from_json<S>(e));
  if (space.dim && f.coords.size() > *space.dim) {
    throw DomainError("functional has more coordinates than the space");
  }
  return f;
}

Json index_set_to_json(const IndexSet& s) {
  Json arr = Json::array();
  for (int i : s.elements()) arr.push_back(i);
  return arr;
}

IndexSet index_set_from_json(const Json& j) {
  IndexSet s;
  for (const Json& e : j) s.insert(e.get<int>());
  return s;
}

Json signed_perm_to_json(const SignedPerm& g) {
  Json j;
  j["perm"] = g.perm();
  j["signs"] = g.signs();
  return j;
}

SignedPerm signed_perm_from_json(const Json& j) {
  return SignedPerm(field(j, "perm").get<std::array<int, 4>>(),
                    field(j, "signs").get<std::array<int, 4>>());
}

template <Scalar S>
Json fix_request_to_json(const FixRequest<S>& req) {
  Json j;
  j["backend"] = ScalarTraits<S>::name;
  j["space"] = space_to_json(req.quad.space());
  j["quad"] = quad_to_json(req.quad);
  j["functional"] = functional_to_json(req.functional);
  j["active"] = index_set_to_json(req.active);
  j["eps"] = scalar_to_json(req.eps);
  return j;
}

template <Scalar S>
FixRequest<S> fix_request_from_json(const Json& j) {
  const SpaceDescriptor space = space_from_json(field(j, "space"));
  FixRequest<S> req;
  req.quad = quad_from_json<S>(space, field(j, "quad"));
  req.functional = functional_from_json<S>(space, field(j, "functional"));
  req.active = index_set_from_json(field(j, "active"));
  req.eps = scalar_from_json<S>(field(j, "eps"));
  return req;
}

template <Scalar S>
Json fix_result_to_json(const FixResult<S>& res) {
  Json j;
  j["z"] = quad_to_json(res.z);
  j["certified"] = index_set_to_json(res.certified);
  Json d = Json::array();
  for (const S& v : res.displacement) d.push_back(scalar_to_json(v));
  j["displacement"] = std::move(d);
  j["displacement_bound"] = scalar_to_json(res.displacement_bound);
  j["route"] = res.route;
  j["transforms"] = res.transforms;
  return j;
}

template <Scalar S>
Json certificate_to_json(const Certificate<S>& c) {
  Json j;
  j["backend"] = ScalarTraits<S>::name;
  j["space"] = space_to_json(c.T.space());
  j["eps"] = scalar_to_json(c.eps);
  j["eta"] = scalar_to_json(c.eta);
  j["T"] = quad_to_json(c.T);
  j["x0"] = vec4_to_json(c.x0);
  j["S"] = quad_to_json(c.S_op);
  j["u0"] = vec4_to_json(c.u0);
  Json r;
  r["attainment"] = scalar_to_json(c.residuals.attainment);
  r["point_distance"] = scalar_to_json(c.residuals.point_distance);
  r["operator_distance"] = scalar_to_json(c.residuals.operator_distance);
  r["norm_defect"] = scalar_to_json(c.residuals.norm_defect);
  j["residuals"] = std::move(r);
  j["isometry"] = signed_perm_to_json(c.isometry);
  j["active"] = index_set_to_json(c.active);
  j["route"] = c.route;
  return j;
}

template <Scalar S>
Certificate<S> certificate_from_json(const Json& j) {
  const SpaceDescriptor space = space_from_json(field(j, "space"));
  Certificate<S> c;
  c.eps = scalar_from_json<S>(field(j, "eps"));
  c.eta = j.contains("eta") ? scalar_from_json<S>(j.at("eta")) : S(0);
  c.T = quad_from_json<S>(space, field(j, "T"));
  c.x0 = vec4_from_json<S>(field(j, "x0"));
  c.S_op = quad_from_json<S>(space, field(j, "S"));
  c.u0 = vec4_from_json<S>(field(j, "u0"));
  const Json& r = field(j, "residuals");
  c.residuals.attainment = scalar_from_json<S>(field(r, "attainment"));
  c.residuals.point_distance = scalar_from_json<S>(field(r, "point_distance"));
  c.residuals.operator_distance = scalar_from_json<S>(field(r, "operator_distance"));
  c.residuals.norm_defect = scalar_from_json<S>(field(r, "norm_defect"));
  if (j.contains("isometry")) c.isometry = signed_perm_from_json(j.at("isometry"));
  if (j.contains("active")) c.active = index_set_from_json(j.at("active"));
  if (j.contains("route")) c.route = j.at("route").get<std::string>();
  return c;
}

template <Scalar S>
Json instance_to_json(const Instance<S>& inst) {
  Json j;
  j["backend"] = ScalarTraits<S>::name;
  j["space"] = space_to_json(inst.T.space());
  j["T"] = quad_to_json(inst.T);
  j["x0"] = vec4_to_json(inst.x0);
  if (inst.eps) j["eps"] = scalar_to_json(*inst.eps);
  return j;
}

template <Scalar S>
Instance<S> instance_from_json(const Json& j) {
  const SpaceDescriptor space = space_from_json(field(j, "space"));
  Instance<S> inst;
  inst.T = quad_from_json<S>(space, field(j, "T"));
  inst.x0 = vec4_from_json<S>(field(j, "x0"));
  if (j.contains("eps")) inst.eps = scalar_from_json<S>(j.at("eps"));
  return inst;
}

std::string backend_of(const Json& j) {
  if (j.is_object() && j.contains("backend")) return j.at("backend").get<std::string>();
  return "rational";
}

#define BPB4_INSTANTIATE(S)                                                      \
  template S scalar_from_json<S>(const Json&);                                   \
  template Json yvec_to_json<S>(const YVec<S>&);                                 \
  template YVec<S> yvec_from_json<S>(const SpaceDescriptor&, const Json&);       \
  template Json quad_to_json<S>(const Quad<S>&);                                 \
  template Quad<S> quad_from_json<S>(const SpaceDescriptor&, const Json&);       \
  template Json vec4_to_json<S>(const Vec4<S>&);                                 \
  template Vec4<S> vec4_from_json<S>(const Json&);                               \
  template Json functional_to_json<S>(const Functional<S>&);                     \
  template Functional<S> functional_from_json<S>(const SpaceDescriptor&, const Json&); \
  template Json fix_request_to_json<S>(const FixRequest<S>&);                    \
  template FixRequest<S> fix_request_from_json<S>(const Json&);                  \
  template Json fix_result_to_json<S>(const FixResult<S>&);                      \
  template Json certificate_to_json<S>(const Certificate<S>&);                   \
  template Certificate<S> certificate_from_json<S>(const Json&);                 \
  template Json instance_to_json<S>(const Instance<S>&);                         \
  template Instance<S> instance_from_json<S>(const Json&);

BPB4_INSTANTIATE(Rational)
BPB4_INSTANTIATE(double)

#undef BPB4_INSTANTIATE

}  // namespace bpb4
