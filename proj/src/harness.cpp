#include "bpb4/harness.hpp"

#include <chrono>
#include <limits>
#include <ostream>

#include "bpb4/errors.hpp"

namespace bpb4 {
namespace {

constexpr int kGridDen = 16;

template <Scalar S>
S from_rational(const Rational& r) {
  if constexpr (ScalarTraits<S>::exact) {
    return r;
  } else {
    return to_double(r);
  }
}

std::size_t pick_extent(const SpaceDescriptor& space, Rng& rng, std::size_t hint) {
  if (space.dim) return *space.dim;
  if (hint > 0) return hint;
  return static_cast<std::size_t>(rng.between(1, 4));
}

template <Scalar S>
YVec<S> raw_vector(const SpaceDescriptor& space, Rng& rng, std::size_t n) {
  std::vector<S> c(n);
  for (auto& v : c) v = from_rational<S>(rng.grid(kGridDen));
  return YVec<S>(space, std::move(c));
}

template <Scalar S>
Quad<S> raw_quad(const SpaceDescriptor& space, Rng& rng, std::size_t n) {
  for (;;) {
    std::array<YVec<S>, 4> ys;
    for (auto& y : ys) y = raw_vector<S>(space, rng, n);
    Quad<S> q(std::move(ys));
    if (op_norm(q) != 0) return q;
  }
}

template <Scalar S>
Quad<S> boundary_quad(const SpaceDescriptor& space, Rng& rng, std::size_t n) {
  Quad<S> q = raw_quad<S>(space, rng, n);
  return S(S(1) / op_norm(q)) * q;
}

/// (1 - lambda) base + lambda interval_quad(u, lo, hi) with lambda = 1 - slack/2.
template <Scalar S>
Quad<S> push_toward(const Quad<S>& base, const YVec<S>& u, int lo, int hi, const S& slack) {
  const S lambda = S(1) - slack / S(2);
  return S(S(1) - lambda) * base + lambda * interval_quad(u, lo, hi);
}

}  // namespace

// ---------------------------------------------------------------------------
// Randomness

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw DomainError("Rng::below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return r % n;
}

int Rng::between(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational Rng::grid(int den) {
  const int k = between(-den, den);
  return ratio<Rational>(k, den);
}

std::string to_string(GenMode m) {
  switch (m) {
    case GenMode::Interior:
      return "interior";
    case GenMode::Boundary:
      return "boundary";
    case GenMode::NearFace:
      return "near-face";
    case GenMode::Constant:
      return "constant";
  }
  return "?";
}

GenMode parse_gen_mode(const std::string& text) {
  for (GenMode m : {GenMode::Interior, GenMode::Boundary, GenMode::NearFace, GenMode::Constant}) {
    if (to_string(m) == text) return m;
  }
  throw std::invalid_argument("unknown mode '" + text +
                              "' (expected interior, boundary, near-face or constant)");
}

// ---------------------------------------------------------------------------
// Generators

template <Scalar S>
YVec<S> random_unit(const SpaceDescriptor& space, Rng& rng, std::size_t extent_hint) {
  const std::size_t n = pick_extent(space, rng, extent_hint);
  for (;;) {
    YVec<S> y = raw_vector<S>(space, rng, n);
    const S m = norm(y);
    if (m != 0) return y / m;
  }
}

template <Scalar S>
Quad<S> interval_quad(const YVec<S>& u, int lo, int hi) {
  if (lo < 1 || hi > 4 || lo > hi) throw DomainError("interval_quad: need 1 <= lo <= hi <= 4");
  const YVec<S> zero = YVec<S>::zero(u.space);
  std::array<YVec<S>, 4> ys;
  for (int i = 1; i <= 4; ++i) ys[static_cast<std::size_t>(i - 1)] = i >= lo && i <= hi ? u : zero;
  return Quad<S>(std::move(ys));
}

template <Scalar S>
Quad<S> gen_quad(const GenSpec& spec) {
  validate(spec.space);
  Rng rng(spec.seed);
  if (spec.mode == GenMode::Constant) {
    const YVec<S> e1 = YVec<S>::unit(spec.space, 0);
    return Quad<S>({e1, e1, e1, e1});
  }
  const std::size_t n = pick_extent(spec.space, rng, 0);
  switch (spec.mode) {
    case GenMode::Interior: {
      Quad<S> q = raw_quad<S>(spec.space, rng, n);
      const S scale = (S(1) + from_rational<S>(spec.margin)) * op_norm(q);
      return S(S(1) / scale) * q;
    }
    case GenMode::Boundary:
      return boundary_quad<S>(spec.space, rng, n);
    case GenMode::NearFace: {
      if (spec.slack < 0 || spec.slack > 2) throw DomainError("gen_quad: slack must lie in [0, 2]");
      const Quad<S> base = boundary_quad<S>(spec.space, rng, n);
      const YVec<S> u = random_unit<S>(spec.space, rng, n);
      return push_toward(base, u, spec.lo, spec.hi, from_rational<S>(spec.slack));
    }
    case GenMode::Constant:
      break;
  }
  throw DomainError("gen_quad: unknown mode");
}

template <Scalar S>
FixRequest<S> gen_fix_request(const SpaceDescriptor& space, std::uint64_t seed, const S& eps,
                              int span, FunctionalChoice choice) {
  validate(space);
  Rng rng(seed);
  const int k = span > 0 ? span : rng.between(1, 4);
  if (k > 4) throw DomainError("gen_fix_request: span must lie in 0..4");
  const int lo = rng.between(1, 5 - k);
  const int hi = lo + k - 1;
  IndexSet active{lo, hi};
  for (int i = lo + 1; i < hi; ++i) {
    if (rng.sign() > 0) active.insert(i);
  }

  const auto sched = schedule<S>(space);
  const std::size_t n = pick_extent(space, rng, 0);
  Functional<S> f;
  f.space = space;
  YVec<S> u;
  S threshold = sched.rho(eps);

  if (space.family == Family::L1 && choice == FunctionalChoice::Native) {
    f.kind = FunctionalKind::SignVector;
    for (std::size_t c = 0; c < n; ++c) f.coords.push_back(S(rng.sign()));
    for (;;) {
      YVec<S> r = raw_vector<S>(space, rng, n);
      S total(0);
      for (std::size_t c = 0; c < n; ++c) {
        r.coords[c] = f.coords[c] * abs_of(r.coords[c]);
        total += abs_of(r.coords[c]);
      }
      if (total != 0) {
        u = r / total;
        break;
      }
    }
  } else if (space.family == Family::L1) {
    f.kind = FunctionalKind::DualCoordinates;
    for (std::size_t c = 0; c < n; ++c) f.coords.push_back(from_rational<S>(rng.grid(kGridDen)));
    const std::size_t j = static_cast<std::size_t>(rng.below(n));
    f.coords[j] = S(rng.sign());
    u = f.coords[j] * YVec<S>::unit(space, j);
    if (space.infinite()) u.coords.resize(n, S(0));
    threshold = sched.gamma_def(eps);
  } else if (space.uniformly_convex()) {
    u = random_unit<S>(space, rng, n);
    f = support_functional(u);
  } else {
    throw UnsupportedError("gen_fix_request: no fix route for " + space.to_string());
  }

  const Quad<S> base = boundary_quad<S>(space, rng, n);
  FixRequest<S> req{push_toward(base, u, lo, hi, S(threshold / S(2))), f, active, eps};
  for (auto& y : req.quad.ys) y.trim();
  return req;
}

template <Scalar S>
Instance<S> gen_bpb_instance(const SpaceDescriptor& space, Rng& rng, const S& eps) {
  validate(space);
  const auto sched = schedule<S>(space);
  const S eta = sched.eta(eps);
  const std::size_t n = pick_extent(space, rng, 0);

  const int k = rng.between(1, 4);
  const int lo = rng.between(1, 5 - k);
  const int hi = lo + k - 1;
  std::array<S, 4> alpha{};
  S total(0);
  for (int i = lo; i <= hi; ++i) {
    alpha[static_cast<std::size_t>(i - 1)] = S(rng.between(1, 8));
    total += alpha[static_cast<std::size_t>(i - 1)];
  }
  for (S& a : alpha) a = a / total;
  // Half the instances put weight eta/8 outside the pushed interval, so the
  // corrected point has to move.
  if (k < 4 && rng.sign() > 0) {
    const S outside = eta / S(8);
    for (S& a : alpha) a = (S(1) - outside) * a;
    const S share = outside / S(4 - k);
    for (int i = 1; i <= 4; ++i) {
      if (i < lo || i > hi) alpha[static_cast<std::size_t>(i - 1)] = share;
    }
  }
  const Vec4<S> x_base = from_coords(alpha);

  std::array<int, 4> perm = {0, 1, 2, 3};
  for (std::size_t i = 3; i > 0; --i) {
    std::swap(perm[i], perm[static_cast<std::size_t>(rng.below(i + 1))]);
  }
  std::array<int, 4> signs{};
  for (int& s : signs) s = rng.sign();
  const SignedPerm g(perm, signs);

  const Quad<S> base = boundary_quad<S>(space, rng, n);
  const YVec<S> u = random_unit<S>(space, rng, n);
  Quad<S> pushed = push_toward(base, u, lo, hi, S(eta / S(2)));
  pushed = S(S(1) / op_norm(pushed)) * pushed;

  Instance<S> inst;
  inst.T = precompose(pushed, g.inverse());
  for (auto& y : inst.T.ys) y.trim();
  inst.x0 = g.apply(x_base);
  inst.eps = eps;
  return inst;
}

// ---------------------------------------------------------------------------
// Oracles

template <Scalar S>
S brute_norm(const Quad<S>& q) {
  S best(0);
  for (unsigned mask = 0; mask < 16; ++mask) {
    Vec4<S> e;
    for (std::size_t i = 0; i < 4; ++i) e[i] = (mask >> i) & 1U ? S(-1) : S(1);
    const S v = norm(apply(q, e));
    if (v > best) best = v;
  }
  return best;
}

template <Scalar S>
std::optional<Quad<S>> brute_ahsp_search(const Quad<S>& q, const IndexSet& active, const S& eps,
                                         int res, std::uint64_t node_budget) {
  const SpaceDescriptor& space = q.space();
  if (space.infinite() || *space.dim > 2) {
    throw SizeError("brute_ahsp_search: dimension " + space.to_string() + " exceeds 2");
  }
  if (res < 1 || res > 25) throw SizeError("brute_ahsp_search: resolution must lie in 1..25");
  if (active.empty() || !active.subset_of(IndexSet::interval(1, 4))) {
    throw DomainError("brute_ahsp_search: active set must be a nonempty subset of {1..4}");
  }
  if (!(eps > 0)) throw DomainError("brute_ahsp_search: eps must be positive");
  const std::size_t dim = *space.dim;

  std::vector<S> offsets;
  for (int k = 0; k < res; ++k) offsets.push_back(eps * S(2 * k - (res - 1)) / S(res));

  std::array<std::vector<YVec<S>>, 4> cands;
  for (int i = 1; i <= 4; ++i) {
    const YVec<S>& y = q.at(i);
    const bool in_a = active.contains(i);
    auto& list = cands[static_cast<std::size_t>(i - 1)];
    auto consider = [&](const YVec<S>& c) {
      if (!(norm(c - y) < eps)) return;
      const S m = norm(c);
      if (in_a ? m == 1 : m <= 1) list.push_back(c);
    };
    consider(y);
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) total *= offsets.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
      YVec<S> c = y;
      std::size_t rest = idx;
      for (std::size_t d = 0; d < dim; ++d) {
        c.coords[d] = c.coords[d] + offsets[rest % offsets.size()];
        rest /= offsets.size();
      }
      consider(c);
      if (in_a) {
        const S m = norm(c);
        if (m != 0) consider(c / m);
      }
    }
    if (list.empty()) return std::nullopt;
  }

  Quad<S> z = q;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  const auto partial_ok = [&](int m) {
    static constexpr std::array<std::array<int, 3>, 4> triples = {
        {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
    for (const auto& [a, b, c] : triples) {
      if (c == m && !(norm(z.at(a) - z.at(b) + z.at(c)) <= 1)) return false;
    }
    YVec<S> sum = YVec<S>::zero(space);
    int count = 0;
    for (int i : active.elements()) {
      if (i > m) break;
      sum = sum + z.at(i);
      ++count;
    }
    return count == 0 || norm(sum) == S(count);
  };
  const std::function<bool(int)> dfs = [&](int m) -> bool {
    if (m > 4) return true;
    for (const auto& c : cands[static_cast<std::size_t>(m - 1)]) {
      if (++nodes > node_budget) {
        exhausted = true;
        return false;
      }
      z.at(m) = c;
      if (partial_ok(m) && dfs(m + 1)) return true;
      if (exhausted) return false;
    }
    return false;
  };
  if (dfs(1)) return z;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sweep

template <Scalar S>
SweepResult<S> sweep(const SpaceDescriptor& space, const std::vector<S>& eps_list,
                     std::size_t count, std::uint64_t seed, const SweepOptions<S>& opts) {
  SweepResult<S> out;
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    const S& eps = eps_list[e];
    for (std::size_t n = 0; n < count; ++n) {
      Rng rng = Rng::stream(seed, e * count + n);
      std::optional<Instance<S>> inst;
      for (int attempt = 0; attempt <= opts.max_retries && !inst; ++attempt) {
        Instance<S> cand = gen_bpb_instance<S>(space, rng, eps);
        const S image = norm(apply(cand.T, cand.x0));
        if (image > S(1) - schedule<S>(space).eta(eps)) inst = std::move(cand);
      }
      if (!inst) {
        ++out.skipped;
        continue;
      }

      const auto start = std::chrono::steady_clock::now();
      Certificate<S> cert;
      try {
        cert = correct(inst->T, inst->x0, eps);
      } catch (const std::exception& ex) {
        throw SweepFailure(std::string("correct() failed: ") + ex.what(), instance_to_json(*inst));
      }
      if (opts.tamper) opts.tamper(cert);
      const VerifyReport<S> rep = verify_certificate(cert);
      const auto stop = std::chrono::steady_clock::now();
      if (!rep.pass) {
        std::string msg = "certificate failed verification:";
        for (const auto& c : rep.checks) {
          if (!c.ok) msg += " [" + c.name + ": " + c.value + "]";
        }
        throw SweepFailure(msg, instance_to_json(*inst));
      }

      SweepRow<S> row;
      row.eps = eps;
      row.eta = cert.eta;
      row.point_distance = rep.recomputed.point_distance;
      row.operator_distance = rep.recomputed.operator_distance;
      row.attainment_defect = abs_of(rep.recomputed.attainment);
      row.case_label = cert.route;
      if (opts.timing) {
        row.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      }
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

template <Scalar S>
void write_csv(std::ostream& out, const std::vector<SweepRow<S>>& rows) {
  out << "eps,eta,point_distance,operator_distance,attainment_defect,case,runtime_ms\n";
  for (const auto& r : rows) {
    out << format_decimal(to_double(r.eps)) << ',' << format_decimal(to_double(r.eta)) << ','
        << format_decimal(to_double(r.point_distance)) << ','
        << format_decimal(to_double(r.operator_distance)) << ','
        << format_decimal(to_double(r.attainment_defect)) << ',' << r.case_label << ','
        << format_decimal(r.runtime_ms) << '\n';
  }
}

#define BPB4_INSTANTIATE(S)                                                                     \
  template YVec<S> random_unit<S>(const SpaceDescriptor&, Rng&, std::size_t);                  \
  template Quad<S> interval_quad<S>(const YVec<S>&, int, int);                                  \
  template Quad<S> gen_quad<S>(const GenSpec&);                                                 \
  template FixRequest<S> gen_fix_request<S>(const SpaceDescriptor&, std::uint64_t, const S&,   \
                                            int, FunctionalChoice);                             \
  template Instance<S> gen_bpb_instance<S>(const SpaceDescriptor&, Rng&, const S&);             \
  template S brute_norm<S>(const Quad<S>&);                                                     \
  template std::optional<Quad<S>> brute_ahsp_search<S>(const Quad<S>&, const IndexSet&,        \
                                                       const S&, int, std::uint64_t);           \
  template SweepResult<S> sweep<S>(const SpaceDescriptor&, const std::vector<S>&, std::size_t, \
                                   std::uint64_t, const SweepOptions<S>&);                      \
  template void write_csv<S>(std::ostream&, const std::vector<SweepRow<S>>&);

BPB4_INSTANTIATE(Rational)
BPB4_INSTANTIATE(double)

#undef BPB4_INSTANTIATE

}  // namespace bpb4
