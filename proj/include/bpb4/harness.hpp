#pragma once

// Seeded instance generators, brute-force oracles and the experiment sweep.
//
// Randomness: every instance draws from its own std::mt19937_64 stream whose
// seed is splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15). Only raw
// 64-bit engine outputs are consumed (no std:: distributions), so outputs
// are identical across platforms and standard libraries. Raw coordinates are
// drawn on a dyadic grid and converted to the backend afterwards, so both
// backends see the same instance before normalization.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpb4/ahsp.hpp"
#include "bpb4/bpb.hpp"
#include "bpb4/json_io.hpp"

namespace bpb4 {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Independent stream number `index` of `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return eng_(); }
  /// Uniform in [0, n), by rejection.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  int between(int lo, int hi);
  /// Uniform on {-den, ..., den} / den.
  Rational grid(int den);
  int sign() { return (next() >> 63) != 0 ? -1 : 1; }

 private:
  std::mt19937_64 eng_;
};

enum class GenMode { Interior, Boundary, NearFace, Constant };

std::string to_string(GenMode m);
GenMode parse_gen_mode(const std::string& text);

struct GenSpec {
  SpaceDescriptor space;
  std::uint64_t seed = 0;
  GenMode mode = GenMode::Boundary;
  Rational slack{0};         // near-face: |sum_{i=lo..hi} y_i| >= (hi-lo+1)(1 - slack)
  int lo = 1;
  int hi = 4;
  Rational margin{1, 8};     // interior: extra scale 1 + margin
};

template <Scalar S>
Quad<S> gen_quad(const GenSpec& spec);

/// Random norm-one vector of the space.
template <Scalar S>
YVec<S> random_unit(const SpaceDescriptor& space, Rng& rng, std::size_t extent_hint = 0);

/// u on positions lo..hi and 0 elsewhere; always in M when |u| <= 1.
template <Scalar S>
Quad<S> interval_quad(const YVec<S>& u, int lo, int hi);

enum class FunctionalChoice {
  Native,   // sign vector on l1 (checked against rho), support functional otherwise
  General,  // dense dual coordinates on l1, checked against gamma_def
};

/// A valid FixRequest whose active set spans `span` consecutive positions
/// (0: random span). The slack is half the route's threshold.
template <Scalar S>
FixRequest<S> gen_fix_request(const SpaceDescriptor& space, std::uint64_t seed, const S& eps,
                              int span = 0, FunctionalChoice choice = FunctionalChoice::Native);

/// (T, x0) with op_norm(T) = 1, |x0| = 1 and |T x0| > 1 - eta(eps).
template <Scalar S>
Instance<S> gen_bpb_instance(const SpaceDescriptor& space, Rng& rng, const S& eps);

/// Maximum of |apply(q, e)| over the 16 sign vectors e.
template <Scalar S>
S brute_norm(const Quad<S>& q);

/// Grid search for z in M with |z_i - y_i| < eps and |sum_{i in A} z_i| = |A|.
/// Each coordinate of y_i is offset by eps (2k - (res - 1)) / res; positions
/// in A additionally try the normalized offsets. Returns nullopt when nothing
/// is found within the node budget, which is inconclusive.
/// Throws SizeError for dimension > 2, infinite spaces or res outside 1..25.
template <Scalar S>
std::optional<Quad<S>> brute_ahsp_search(const Quad<S>& q, const IndexSet& active, const S& eps,
                                         int res, std::uint64_t node_budget = 2'000'000);

template <Scalar S>
struct SweepRow {
  S eps{};
  S eta{};
  S point_distance{};
  S operator_distance{};
  S attainment_defect{};
  std::string case_label;
  double runtime_ms = 0.0;
};

template <Scalar S>
struct SweepOptions {
  bool timing = false;  // record wall time; off keeps the CSV reproducible
  int max_retries = 8;
  std::function<void(Certificate<S>&)> tamper;  // test hook, applied before verification
};

template <Scalar S>
struct SweepResult {
  std::vector<SweepRow<S>> rows;
  std::size_t skipped = 0;
};

/// Raised when a certificate fails verification; carries the instance.
class SweepFailure : public std::runtime_error {
 public:
  SweepFailure(const std::string& msg, Json instance)
      : std::runtime_error(msg), instance_(std::move(instance)) {}
  const Json& instance() const { return instance_; }

 private:
  Json instance_;
};

/// Instance n at eps index e uses stream e * count + n of `seed`.
template <Scalar S>
SweepResult<S> sweep(const SpaceDescriptor& space, const std::vector<S>& eps_list,
                     std::size_t count, std::uint64_t seed, const SweepOptions<S>& opts = {});

/// Header "eps,eta,point_distance,operator_distance,attainment_defect,case,runtime_ms".
template <Scalar S>
void write_csv(std::ostream& out, const std::vector<SweepRow<S>>& rows);

}  // namespace bpb4
