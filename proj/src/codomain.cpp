#include "bpb4/codomain.hpp"

#include <cmath>
#include <stdexcept>

#include "bpb4/errors.hpp"

namespace bpb4 {
namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::size_t parse_dim(const std::string& s) {
  std::size_t used = 0;
  const unsigned long v = std::stoul(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad dimension '" + s + "'");
  return v;
}

template <Scalar S>
void require_float_for_lp(const SpaceDescriptor& sp, const char* what) {
  if constexpr (ScalarTraits<S>::exact) {
    if (sp.family == Family::Lp) {
      throw UnsupportedError(std::string(what) + ": lp spaces require the float backend");
    }
  }
}

}  // namespace

SpaceDescriptor SpaceDescriptor::l1(std::size_t n) { return {Family::L1, 1.0, n}; }
SpaceDescriptor SpaceDescriptor::l1_infinite() { return {Family::L1, 1.0, std::nullopt}; }
SpaceDescriptor SpaceDescriptor::lp(double p, std::size_t n) { return {Family::Lp, p, n}; }
SpaceDescriptor SpaceDescriptor::sup(std::size_t n) { return {Family::Sup, 1.0, n}; }
SpaceDescriptor SpaceDescriptor::reals() { return {Family::Reals, 1.0, 1}; }

std::string SpaceDescriptor::to_string() const {
  const std::string d = dim ? std::to_string(*dim) : std::string("inf");
  switch (family) {
    case Family::L1:
      return "l1:" + d;
    case Family::Lp:
      return "lp:" + format_decimal(p) + ":" + d;
    case Family::Sup:
      return "sup:" + d;
    case Family::Reals:
      return "r";
  }
  return "?";
}

SpaceDescriptor SpaceDescriptor::parse(std::string_view text) {
  const auto parts = split(text, ':');
  SpaceDescriptor sp;
  const std::string& fam = parts[0];
  if (fam == "r" && parts.size() == 1) {
    sp = reals();
  } else if (fam == "l1" && parts.size() == 2) {
    sp = parts[1] == "inf" ? l1_infinite() : l1(parse_dim(parts[1]));
  } else if (fam == "lp" && parts.size() == 3) {
    sp = lp(parse_scalar<double>(parts[1]), parse_dim(parts[2]));
  } else if (fam == "sup" && parts.size() == 2) {
    sp = sup(parse_dim(parts[1]));
  } else {
    throw std::invalid_argument("bad space descriptor '" + std::string(text) +
                                "' (expected r, l1:N, l1:inf, lp:P:N or sup:N)");
  }
  validate(sp);
  return sp;
}

void validate(const SpaceDescriptor& sp) {
  if (sp.family == Family::Lp && !(sp.p > 1.0 && std::isfinite(sp.p))) {
    throw DomainError("lp space needs 1 < p < inf");
  }
  if (sp.infinite() && sp.family != Family::L1) {
    throw DomainError("only l1 may be infinite-dimensional");
  }
  if (sp.dim && *sp.dim == 0) throw DomainError("space dimension must be >= 1");
  if (sp.family == Family::Reals && sp.dim != std::size_t{1}) {
    throw DomainError("the real line has dimension 1");
  }
}

// ---------------------------------------------------------------------------
// YVec

template <Scalar S>
YVec<S>::YVec(SpaceDescriptor sp, std::vector<S> c) : space(std::move(sp)), coords(std::move(c)) {
  if (space.dim && coords.size() != *space.dim) {
    throw DomainError("vector length " + std::to_string(coords.size()) +
                      " does not match space " + space.to_string());
  }
}

template <Scalar S>
YVec<S> YVec<S>::zero(const SpaceDescriptor& sp) {
  return YVec(sp, std::vector<S>(sp.dim.value_or(0), S(0)));
}

template <Scalar S>
YVec<S> YVec<S>::unit(const SpaceDescriptor& sp, std::size_t k) {
  if (sp.dim && k >= *sp.dim) throw DomainError("unit vector index out of range");
  std::vector<S> c(sp.dim.value_or(k + 1), S(0));
  c[k] = S(1);
  return YVec(sp, std::move(c));
}

template <Scalar S>
void YVec<S>::trim() {
  if (!space.infinite()) return;
  while (!coords.empty() && coords.back() == 0) coords.pop_back();
}

template <Scalar S>
bool YVec<S>::operator==(const YVec& o) const {
  if (!(space == o.space)) return false;
  const std::size_t n = std::max(extent(), o.extent());
  for (std::size_t k = 0; k < n; ++k) {
    if (at(k) != o.at(k)) return false;
  }
  return true;
}

template <Scalar S>
YVec<S> YVec<S>::operator-() const {
  YVec r = *this;
  for (S& v : r.coords) v = -v;
  return r;
}

template <Scalar S>
YVec<S> YVec<S>::combine(const YVec& a, const YVec& b, int sign) {
  if (!(a.space == b.space)) {
    throw DomainError("mixed spaces: " + a.space.to_string() + " vs " + b.space.to_string());
  }
  const std::size_t n = std::max(a.extent(), b.extent());
  YVec r;
  r.space = a.space;
  r.coords.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    r.coords[k] = sign > 0 ? S(a.at(k) + b.at(k)) : S(a.at(k) - b.at(k));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Functional

template <Scalar S>
S Functional<S>::entry(std::size_t k) const {
  if (k < coords.size()) return coords[k];
  return kind == FunctionalKind::SignVector ? S(1) : S(0);
}

template <Scalar S>
S Functional<S>::operator()(const YVec<S>& y) const {
  if (!(space == y.space)) throw DomainError("functional applied to a vector of another space");
  S acc(0);
  for (std::size_t k = 0; k < y.extent(); ++k) acc += entry(k) * y.coords[k];
  return acc;
}

// ---------------------------------------------------------------------------
// Norms

template <Scalar S>
S norm(const YVec<S>& y) {
  require_float_for_lp<S>(y.space, "norm");
  S acc(0);
  switch (y.space.family) {
    case Family::L1:
      for (const S& v : y.coords) acc += abs_of(v);
      return acc;
    case Family::Sup:
    case Family::Reals:
      for (const S& v : y.coords) {
        const S a = abs_of(v);
        if (a > acc) acc = a;
      }
      return acc;
    case Family::Lp:
      if constexpr (!ScalarTraits<S>::exact) {
        const double p = y.space.p;
        if (p == 2.0) {
          for (double v : y.coords) acc += v * v;
          return std::sqrt(acc);
        }
        for (double v : y.coords) acc += std::pow(std::abs(v), p);
        return std::pow(acc, 1.0 / p);
      }
      break;
  }
  throw UnsupportedError("norm: unsupported family");
}

template <Scalar S>
S dual_norm(const Functional<S>& f) {
  require_float_for_lp<S>(f.space, "dual_norm");
  S acc(0);
  if (f.kind == FunctionalKind::SignVector) {
    for (const S& v : f.coords) {
      if (v != 1 && v != -1) throw DomainError("sign-vector functional with entry not +-1");
    }
    return S(1);
  }
  switch (f.space.family) {
    case Family::L1:
    case Family::Reals:
      for (const S& v : f.coords) {
        const S a = abs_of(v);
        if (a > acc) acc = a;
      }
      return acc;
    case Family::Sup:
      for (const S& v : f.coords) acc += abs_of(v);
      return acc;
    case Family::Lp:
      if constexpr (!ScalarTraits<S>::exact) {
        const double q = f.space.p / (f.space.p - 1.0);
        for (double v : f.coords) acc += std::pow(std::abs(v), q);
        return std::pow(acc, 1.0 / q);
      }
      break;
  }
  throw UnsupportedError("dual_norm: unsupported family");
}

template <Scalar S>
Functional<S> support_functional(const YVec<S>& y) {
  require_float_for_lp<S>(y.space, "support_functional");
  const S n = norm(y);
  if (n == 0) throw DomainError("support_functional: zero vector");

  Functional<S> f;
  f.space = y.space;
  switch (y.space.family) {
    case Family::L1:
    case Family::Reals:
      f.kind = FunctionalKind::SignVector;
      f.coords.reserve(y.extent());
      for (const S& v : y.coords) f.coords.push_back(v < 0 ? S(-1) : S(1));
      return f;
    case Family::Sup: {
      f.kind = FunctionalKind::DualCoordinates;
      f.coords.assign(y.extent(), S(0));
      for (std::size_t k = 0; k < y.extent(); ++k) {
        if (abs_of(y.coords[k]) == n) {
          f.coords[k] = y.coords[k] < 0 ? S(-1) : S(1);
          break;
        }
      }
      return f;
    }
    case Family::Lp:
      if constexpr (!ScalarTraits<S>::exact) {
        const double p = y.space.p;
        f.kind = FunctionalKind::DualCoordinates;
        f.coords.reserve(y.extent());
        const double scale = std::pow(n, p - 1.0);
        for (double v : y.coords) {
          const double m = std::pow(std::abs(v), p - 1.0) / scale;
          f.coords.push_back(v < 0 ? -m : m);
        }
        return f;
      }
      break;
  }
  throw UnsupportedError("support_functional: unsupported family");
}

template <Scalar S>
S modulus_convexity(const SpaceDescriptor& space, const S& eps) {
  if (!(eps > 0) || eps > 2) throw DomainError("modulus_convexity: eps must lie in (0, 2]");
  switch (space.family) {
    case Family::Reals:
      return eps / S(2);
    case Family::Lp:
      if constexpr (ScalarTraits<S>::exact) {
        throw UnsupportedError("modulus_convexity: lp spaces require the float backend");
      } else {
        const double p = space.p;
        if (p == 2.0) return 1.0 - std::sqrt(1.0 - eps * eps / 4.0);
        if (p > 2.0) return 1.0 - std::pow(1.0 - std::pow(eps / 2.0, p), 1.0 / p);
        return (p - 1.0) * eps * eps / 8.0;
      }
    case Family::L1:
    case Family::Sup:
      break;
  }
  throw UnsupportedError("modulus_convexity: " + space.to_string() + " is not uniformly convex");
}

#define BPB4_INSTANTIATE(S)                                                     \
  template struct YVec<S>;                                                      \
  template struct Functional<S>;                                                \
  template S norm<S>(const YVec<S>&);                                           \
  template S dual_norm<S>(const Functional<S>&);                                \
  template Functional<S> support_functional<S>(const YVec<S>&);                 \
  template S modulus_convexity<S>(const SpaceDescriptor&, const S&);

BPB4_INSTANTIATE(Rational)
BPB4_INSTANTIATE(double)

#undef BPB4_INSTANTIATE

}  // namespace bpb4
