#include <filesystem>
#include <fstream>
#include <functional>

#include "cli/commands.hpp"
#include "lndlab/errors.hpp"
#include "lndlab/parse.hpp"

namespace lndlab::cli {

namespace {

struct StepLog {
  std::string name;
  std::string file;
  bool passed = false;
  std::vector<std::string> failed;
  std::string error;
};

class Pipeline {
 public:
  Pipeline(std::filesystem::path dir, std::string digest) : dir_(std::move(dir)), digest_(std::move(digest)) {}

  /// Runs one step. An exception marks the step failed with its message;
  /// the remaining steps still run.
  void step(const std::string& name, const std::function<void(Report&)>& body) {
    Report rep;
    rep.command = "reproduce/" + name;
    rep.digest = digest_;
    StepLog log{name, name + ".json", false, {}, {}};
    try {
      body(rep);
    } catch (const std::exception& e) {
      log.error = e.what();
      rep.result["error"] = e.what();
      rep.check("step completed", false);
    }
    log.passed = rep.passed();
    for (const auto& c : rep.verification)
      if (!c.passed) log.failed.push_back(c.name);
    std::ofstream(dir_ / log.file, std::ios::binary) << rep.to_json().dump(2) << '\n';
    steps_.push_back(std::move(log));
  }

  const std::vector<StepLog>& steps() const { return steps_; }

 private:
  std::filesystem::path dir_;
  std::string digest_;
  std::vector<StepLog> steps_;
};

}  // namespace

Report reproduce_pipeline(const ReproduceOptions& opts) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec || !fs::is_directory(opts.out_dir)) throw DomainError("cannot create output directory '" + opts.out_dir + "'");

  InputDigest d;
  d.add("command", "reproduce");
  for (auto x : opts.exponents) d.add("exponent", std::to_string(x));
  d.add("n-max", std::to_string(opts.n_max));
  Pipeline pipe(opts.out_dir, d.hex());

  std::optional<ExampleRing> ring;
  std::optional<KernelGrading> grading;
  std::vector<std::optional<KernelElement>> fns(opts.n_max + 1);

  pipe.step("build_section4", [&](Report& rep) {
    ring = build_section4(opts.exponents);
    grading = section4_grading(ring->quotient.ambient());
    const auto& order = ring->quotient.order();
    rep.result["modulus"] = format_poly(ring->quotient.modulus(), order);
    rep.result["exponents"] = opts.exponents;
    rep.check("E(P) in (P)", induces_derivation(ring->quotient, ring->derivation));
  });
  if (!ring) {
    Report rep;
    rep.command = "reproduce";
    rep.digest = d.hex();
    rep.result["failed_step"] = "build_section4";
    rep.check("build_section4", false);
    return rep;
  }
  const auto& e = ring->derivation;
  const auto& g = *grading;

  pipe.step("kernel_identities", [&](Report& rep) {
    for (const char* k : {"x", "y", "z", "l1", "l2", "l3", "P"}) {
      const bool zero = e(ring->element(k)).is_zero();
      rep.result[k] = zero ? "E = 0" : "E != 0";
      rep.check(std::string("E(") + k + ") = 0", zero);
    }
  });

  pipe.step("nilpotency", [&](Report& rep) {
    auto tri = certify_triangular(e);
    rep.result["status"] = to_string(tri.status);
    rep.check("E certified triangular", tri.status == NilpotencyStatus::certified_nilpotent);
    const std::vector<std::pair<std::string, unsigned>> expect = {{"V", 2}, {"S*T", 3}, {"P", 1}};
    for (const auto& [label, want] : expect) {
      auto f = label == "P" ? ring->element("P") : parse_poly(label, g.ctx);
      auto r = nilpotency_order(e, f, 64);
      rep.result["order(" + label + ")"] = r.order ? Json(*r.order) : Json(nullptr);
      rep.check("order(" + label + ") = " + std::to_string(want), r.order == want);
    }
  });

  pipe.step("rigidity_certificate", [&](Report& rep) {
    auto cert = build_rigidity_certificate(g.ctx, ring->power_terms, ring->plan);
    rep.result = certificate_json(cert);
    rep.check("reciprocal bound", cert.bound.satisfied);
    rep.check("all proper subsums nonzero modulo P", std::none_of(cert.subsums.begin(), cert.subsums.end(),
                                                                  [](const SubsumCheck& s) { return s.vanishes; }));
    rep.check("P certified irreducible", cert.primality.status == IrreducibilityStatus::irreducible_certified);
  });

  for (unsigned n = 1; n <= opts.n_max; ++n) {
    pipe.step("find_fn_n" + std::to_string(n), [&](Report& rep) {
      auto el = find_Fn(e, g, n);
      rep.result = kernel_element_json(n, el, g);
      Monomial target = Monomial::variable(g.ctx->size(), g.ctx->require("X"));
      target[g.ctx->require("V")] = n;
      rep.check("E(F_n) = 0 re-applied", e(el.polynomial).is_zero());
      rep.check("leading monomial X*V^n", el.leading == target);
      auto dv = (el.polynomial - Polynomial::monomial(g.ctx, target)).degree_in(g.ctx->require("V"));
      rep.check("remainder V-degree < n", dv.is_neg_infinity() || dv.value() < static_cast<std::int64_t>(n));
      if (n == 1) rep.check("F_1 = XV - Y^2Z^2S", el.polynomial == parse_poly("X*V - Y^2*Z^2*S", g.ctx));
      fns[n] = std::move(el);
    });
  }

  pipe.step("l5_membership", [&](Report& rep) {
    Json list = Json::array();
    std::vector<std::pair<std::string, Polynomial>> targets;
    for (const char* k : {"x", "y", "z", "l1", "l2", "l3"}) targets.emplace_back(k, ring->element(k));
    for (unsigned n = 1; n <= opts.n_max; ++n)
      if (fns[n]) targets.emplace_back("F_" + std::to_string(n), fns[n]->polynomial);
    for (const auto& [label, f] : targets) {
      auto m = l5_membership(*ring, f);
      Json j = {{"label", label}};
      j.update(membership_json(m, g.order));
      list.push_back(std::move(j));
      rep.check(label + " decomposes", m.member);
    }
    rep.result["elements"] = std::move(list);
  });

  for (unsigned n = 1; n <= opts.n_max; ++n) {
    pipe.step("escape_n" + std::to_string(n), [&](Report& rep) {
      if (!fns[n]) throw Error("F_" + std::to_string(n) + " unavailable");
      auto r = escape_check(*ring, g, n, *fns[n]);
      auto c = escape_check(*ring, g, n, *fns[n], true);
      rep.headline = escape_headline(r);
      rep.result["statement"] = escape_headline(r);
      rep.result["escape"] = escape_json(r, *g.ctx);
      rep.result["control"] = escape_json(c, *g.ctx);
      rep.check("target escapes", r.escapes());
      rep.check("control reports membership", c.member);
      rep.check("F_n remainder in filtration", r.remainder_in_filtration);
    });
  }

  Report summary;
  summary.command = "reproduce";
  summary.digest = d.hex();
  Json steps = Json::array();
  for (const auto& s : pipe.steps()) {
    Json j = {{"step", s.name}, {"file", s.file}, {"passed", s.passed}, {"failed_checks", s.failed}};
    if (!s.error.empty()) j["error"] = s.error;
    steps.push_back(std::move(j));
    summary.check(s.name, s.passed);
  }
  summary.result["exponents"] = opts.exponents;
  summary.result["n_max"] = opts.n_max;
  summary.result["steps"] = std::move(steps);
  summary.headline = summary.passed() ? "all checks passed" : "some checks FAILED";
  std::ofstream(fs::path(opts.out_dir) / "summary.json", std::ios::binary) << summary.to_json().dump(2) << '\n';
  return summary;
}

}  // namespace lndlab::cli
