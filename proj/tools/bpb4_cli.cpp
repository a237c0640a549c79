// bpb4: command-line front end.
//
// Exit codes: 0 pass, 1 verification failure, 2 precondition or input
// error, 3 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpb4/ahsp.hpp"
#include "bpb4/bpb.hpp"
#include "bpb4/errors.hpp"
#include "bpb4/harness.hpp"
#include "bpb4/json_io.hpp"

namespace {

using namespace bpb4;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;
constexpr int kUsage = 3;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << j.dump(2) << '\n';
  }
}

void require_backend(const std::string& b) {
  if (b != "rational" && b != "float") {
    throw std::invalid_argument("backend must be rational or float, got '" + b + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <Scalar S>
Json report_json(const VerifyReport<S>& rep) {
  Json j;
  j["pass"] = rep.pass;
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json line;
    line["check"] = c.name;
    line["value"] = c.value;
    line["ok"] = c.ok;
    checks.push_back(std::move(line));
  }
  j["checks"] = std::move(checks);
  return j;
}

template <Scalar S>
int do_verify(const Json& doc) {
  const Certificate<S> cert = certificate_from_json<S>(doc);
  const VerifyReport<S> rep = verify_certificate(cert);
  for (const auto& c : rep.checks) {
    std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << "  (" << c.value << ")\n";
  }
  std::cout << (rep.pass ? "certificate verified" : "certificate rejected") << '\n';
  return rep.pass ? kPass : kFail;
}

template <Scalar S>
int do_correct(const Json& doc, const std::string& eps_text, const std::string& out_path) {
  const Instance<S> inst = instance_from_json<S>(doc);
  S eps;
  if (!eps_text.empty()) {
    eps = parse_scalar<S>(eps_text);
  } else if (inst.eps) {
    eps = *inst.eps;
  } else {
    throw std::invalid_argument("no eps given (use --eps or an \"eps\" field)");
  }
  const Certificate<S> cert = correct(inst.T, inst.x0, eps);
  const VerifyReport<S> rep = verify_certificate(cert);
  emit(certificate_to_json(cert), out_path);
  if (!rep.pass) std::cerr << report_json(rep).dump(2) << '\n';
  return rep.pass ? kPass : kFail;
}

template <Scalar S>
int do_gen(const GenSpec& spec, const std::string& out_path) {
  const Quad<S> q = gen_quad<S>(spec);
  const auto rep = is_in_m4(q);
  Json j;
  j["backend"] = ScalarTraits<S>::name;
  j["space"] = space_to_json(spec.space);
  j["seed"] = spec.seed;
  j["mode"] = to_string(spec.mode);
  j["quad"] = quad_to_json(q);
  Json m;
  m["member"] = rep.member;
  m["slack"] = scalar_to_json(rep.slack);
  m["witness"] = rep.witness;
  j["membership"] = std::move(m);
  emit(j, out_path);
  return kPass;
}

template <Scalar S>
int do_sweep(const SpaceDescriptor& space, const std::vector<std::string>& eps_items,
             std::size_t count, std::uint64_t seed, const std::string& out_path, bool timing,
             bool tamper) {
  std::vector<S> eps_list;
  for (const auto& e : eps_items) eps_list.push_back(parse_scalar<S>(e));
  SweepOptions<S> opts;
  opts.timing = timing;
  if (tamper) {
    opts.tamper = [](Certificate<S>& c) { c.u0[1] = c.u0[1] + c.eps; };
  }
  try {
    const SweepResult<S> res = sweep<S>(space, eps_list, count, seed, opts);
    if (out_path.empty()) {
      write_csv(std::cout, res.rows);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot write " + out_path);
      write_csv(out, res.rows);
    }
    std::cerr << res.rows.size() << " rows, " << res.skipped << " skipped\n";
    return kPass;
  } catch (const SweepFailure& f) {
    std::cerr << "sweep failed: " << f.what() << "\noffending instance:\n"
              << f.instance().dump(2) << '\n';
    if (!out_path.empty()) {
      std::ofstream dump(out_path + ".failure.json");
      dump << f.instance().dump(2) << '\n';
    }
    return kFail;
  }
}

template <Scalar S>
int do_check_ahsp(const Json& doc, const std::string& out_path) {
  const FixRequest<S> req = fix_request_from_json<S>(doc);
  const FixResult<S> res = ahsp_fix(req);
  const FixAudit<S> audit = audit_fix(req, res);
  Json j = fix_result_to_json(res);
  Json a;
  a["ok"] = audit.ok;
  a["membership_slack"] = scalar_to_json(audit.membership_slack);
  a["attainment_defect"] = scalar_to_json(audit.attainment_defect);
  a["active_defect"] = scalar_to_json(audit.active_defect);
  a["max_displacement"] = scalar_to_json(audit.max_displacement);
  a["failures"] = audit.failures;
  j["audit"] = std::move(a);
  emit(j, out_path);
  return audit.ok ? kPass : kFail;
}

template <Scalar S>
int do_brute(const Json& doc, int grid, std::uint64_t budget, const std::string& out_path) {
  const SpaceDescriptor space = space_from_json(doc.at("space"));
  const Quad<S> q = quad_from_json<S>(space, doc.at("quad"));
  const IndexSet active = index_set_from_json(doc.at("active"));
  const S eps = scalar_from_json<S>(doc.at("eps"));
  const auto found = brute_ahsp_search(q, active, eps, grid, budget);
  Json j;
  j["found"] = found.has_value();
  if (found) {
    j["z"] = quad_to_json(*found);
  } else {
    j["note"] = "no attainer on this grid; inconclusive";
  }
  emit(j, out_path);
  return found ? kPass : kFail;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kFail;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kInput;
  } catch (const DomainError& e) {
    std::cerr << "domain: " << e.what() << '\n';
    return kInput;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kInput;
  } catch (const SizeError& e) {
    std::cerr << "too large: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "input: " << e.what() << '\n';
    return kInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bishop-Phelps-Bollobas corrections for operators from l_inf^4"};
  app.require_subcommand(1);

  std::string out_path;
  std::string backend = "rational";

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "Recompute and check a certificate");
  verify->add_option("certificate", cert_path, "Certificate JSON")->required();

  std::string inst_path;
  std::string eps_text;
  auto* corr = app.add_subcommand("correct", "Correct an instance and emit a certificate");
  corr->add_option("instance", inst_path, "Instance JSON {space, T, x0}")->required();
  corr->add_option("--eps", eps_text, "Tolerance in (0, 1)");
  corr->add_option("--backend", backend, "rational or float");
  corr->add_option("--out", out_path, "Write the certificate here");

  std::string space_text;
  std::uint64_t seed = 0;
  std::string mode_text = "boundary";
  std::string slack_text = "0";
  int lo = 1;
  int hi = 4;
  auto* gen = app.add_subcommand("gen", "Generate a quadruple");
  gen->add_option("--space", space_text, "r, l1:N, l1:inf, lp:P:N or sup:N")->required();
  gen->add_option("--seed", seed, "64-bit seed");
  gen->add_option("--mode", mode_text, "interior, boundary, near-face or constant");
  gen->add_option("--slack", slack_text, "near-face slack");
  gen->add_option("--lo", lo, "near-face interval start");
  gen->add_option("--hi", hi, "near-face interval end");
  gen->add_option("--backend", backend, "rational or float");
  gen->add_option("--out", out_path, "Write the quadruple here");

  std::string eps_list_text;
  std::size_t count = 100;
  bool timing = false;
  bool tamper = false;
  auto* sw = app.add_subcommand("sweep", "Run correct() over generated instances, write CSV");
  sw->add_option("--space", space_text, "Codomain")->required();
  sw->add_option("--eps", eps_list_text, "Comma-separated tolerances")->required();
  sw->add_option("--count", count, "Instances per tolerance");
  sw->add_option("--seed", seed, "64-bit seed");
  sw->add_option("--backend", backend, "rational or float");
  sw->add_option("--out", out_path, "CSV path (stdout when omitted)");
  sw->add_flag("--timing", timing, "Record wall time per row");
  sw->add_flag("--tamper", tamper, "Corrupt every certificate (failure-path test)")
      ->group("");

  std::string req_path;
  auto* check = app.add_subcommand("check-ahsp", "Run the AHSp fix on a FixRequest and audit it");
  check->add_option("request", req_path, "FixRequest JSON")->required();
  check->add_option("--out", out_path, "Write the result here");

  int grid = 25;
  std::uint64_t budget = 2'000'000;
  auto* brute = app.add_subcommand("brute-search", "Grid search for an AHSp attainer");
  brute->add_option("request", req_path, "JSON {space, quad, active, eps}")->required();
  brute->add_option("--grid", grid, "Points per axis (1..25)");
  brute->add_option("--budget", budget, "Search node budget");
  brute->add_option("--out", out_path, "Write the result here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  return guarded([&]() -> int {
    if (*verify) {
      const Json doc = read_json(cert_path);
      return backend_of(doc) == "float" ? do_verify<double>(doc) : do_verify<Rational>(doc);
    }
    if (*check || *brute) {
      const Json doc = read_json(req_path);
      const bool fl = backend_of(doc) == "float";
      if (*check) return fl ? do_check_ahsp<double>(doc, out_path) : do_check_ahsp<Rational>(doc, out_path);
      return fl ? do_brute<double>(doc, grid, budget, out_path)
                : do_brute<Rational>(doc, grid, budget, out_path);
    }
    require_backend(backend);
    const bool fl = backend == "float";
    if (*corr) {
      const Json doc = read_json(inst_path);
      return fl ? do_correct<double>(doc, eps_text, out_path)
                : do_correct<Rational>(doc, eps_text, out_path);
    }
    const SpaceDescriptor space = SpaceDescriptor::parse(space_text);
    if (*gen) {
      GenSpec spec;
      spec.space = space;
      spec.seed = seed;
      spec.mode = parse_gen_mode(mode_text);
      spec.slack = parse_scalar<Rational>(slack_text);
      spec.lo = lo;
      spec.hi = hi;
      return fl ? do_gen<double>(spec, out_path) : do_gen<Rational>(spec, out_path);
    }
    const auto items = split_list(eps_list_text);
    return fl ? do_sweep<double>(space, items, count, seed, out_path, timing, tamper)
              : do_sweep<Rational>(space, items, count, seed, out_path, timing, tamper);
  });
}
