#include "cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lndlab/derivation.hpp"
#include "lndlab/errors.hpp"
#include "lndlab/parse.hpp"
#include "lndlab/quotient.hpp"
#include "lndlab/univariate.hpp"

namespace lndlab::cli {

namespace {

const std::vector<std::string> kSection4Names = {"X", "Y", "Z", "S", "T", "U", "V"};

struct Options {
  std::string derivation_file;
  std::string quotient_file;
  std::vector<std::string> polys;
  std::string modulus;
  std::string vars;
  std::string weights;
  std::string order = "lex";
  std::string exponents;
  std::string e_exponents;
  std::string example = "section4";
  std::vector<std::string> terms;
  std::string kill;
  std::string main_var;
  std::string param = "t";
  unsigned n = 0;
  unsigned n_max = 3;
  unsigned max_order = 64;
  std::uint64_t weight = 0;
  unsigned fiber_degree = 0;
  std::uint64_t max_weight = 0;
  bool control = false;
  bool json = false;
  std::string out_dir;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<unsigned> parse_unsigned_list(const std::string& text, const char* what) {
  std::vector<unsigned> out;
  for (const auto& tok : split_list(text)) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        tok.size() > 9)
      throw DomainError(std::string("invalid ") + what + " entry '" + tok + "'");
    out.push_back(static_cast<unsigned>(std::stoul(tok)));
  }
  return out;
}

void scan_identifiers(std::string_view text, std::vector<std::string>& names) {
  for (std::size_t i = 0; i < text.size();) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      auto j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string id(text.substr(i, j - i));
      if (std::find(names.begin(), names.end(), id) == names.end()) names.push_back(std::move(id));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    } else {
      ++i;
    }
  }
}

/// Shared state of a command: its ring, order and the digest of inputs.
struct Session {
  const Options& opts;
  InputDigest digest;
  std::string derivation_text;
  ContextPtr ctx;
  std::optional<MonomialOrder> order;

  explicit Session(const Options& o) : opts(o) {}

  /// Variables from --vars, the seven example variables when asked for, or
  /// else those collected from the inputs. A subset of the example
  /// variables keeps their declared sequence.
  void resolve_context(const std::vector<std::string>& texts, bool default_section4) {
    std::vector<std::string> names;
    if (!opts.vars.empty()) {
      names = split_list(opts.vars);
    } else {
      if (default_section4) {
        names = kSection4Names;
      } else {
        if (!derivation_text.empty()) names = derivation_file_variables(derivation_text);
        for (const auto& t : texts) scan_identifiers(t, names);
        const bool sub4 = std::all_of(names.begin(), names.end(), [](const std::string& v) {
          return std::find(kSection4Names.begin(), kSection4Names.end(), v) != kSection4Names.end();
        });
        if (sub4) {
          std::vector<std::string> ordered;
          for (const auto& v : kSection4Names)
            if (std::find(names.begin(), names.end(), v) != names.end()) ordered.push_back(v);
          names = std::move(ordered);
        }
      }
    }
    if (names.empty()) throw DomainError("no variables: pass --vars or a polynomial");
    std::vector<std::uint32_t> w;
    if (!opts.weights.empty()) {
      for (auto x : parse_unsigned_list(opts.weights, "weight")) w.push_back(x);
      if (w.size() != names.size()) throw DomainError("--weights must list one weight per variable");
    } else if (names == kSection4Names) {
      w = {1, 1, 1, 3, 3, 3, 6};
    }
    ctx = RingContext::make(names, w);
    if (opts.order == "lex")
      order = MonomialOrder::lex(ctx->size());
    else if (opts.order == "wgrlex")
      order = MonomialOrder::weighted_graded_lex(w.empty() ? std::vector<std::uint32_t>(ctx->size(), 1) : w);
    else
      throw DomainError("--order must be lex or wgrlex");
  }

  void load_derivation_text() {
    if (opts.derivation_file.empty()) return;
    derivation_text = read_file(opts.derivation_file);
    digest.add("derivation-file", derivation_text);
  }

  /// The derivation from --derivation, or E on the example ring by default.
  Derivation derivation() const {
    if (!derivation_text.empty()) return parse_derivation(derivation_text, ctx);
    return Derivation::from_images(ctx, {{"S", parse_poly("X^3", ctx)},
                                         {"T", parse_poly("Y^3", ctx)},
                                         {"U", parse_poly("Z^3", ctx)},
                                         {"V", parse_poly("X^2*Y^2*Z^2", ctx)}});
  }

  std::string fmt(const Polynomial& p) const { return format_poly(p, *order); }
};

void add_args_to_digest(InputDigest& d, const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--json") continue;
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    d.add("arg", args[i]);
  }
}

const Polynomial& single_poly(const Options& o, const Session& s, std::optional<Polynomial>& slot) {
  if (o.polys.size() != 1) throw DomainError("exactly one --poly is required");
  slot = parse_poly(o.polys[0], s.ctx);
  return *slot;
}

Json nilpotency_json(const NilpotencyResult& r, const RingContext& ctx) {
  Json j;
  j["status"] = to_string(r.status);
  j["order"] = r.order ? Json(*r.order) : Json(nullptr);
  if (r.kind) j["certificate"] = to_string(*r.kind);
  if (!r.variable_orders.empty()) {
    Json v = Json::object();
    for (const auto& name : ctx.names())
      if (auto it = r.variable_orders.find(name); it != r.variable_orders.end()) v[name] = it->second;
    j["variable_orders"] = std::move(v);
  }
  if (!r.triangular_order.empty()) {
    Json seq = Json::array();
    for (auto i : r.triangular_order) seq.push_back(ctx.name(i));
    j["triangular_order"] = std::move(seq);
  }
  return j;
}

ExampleRing ring_for(const Options& o, bool example1) {
  if (example1) {
    const unsigned n = o.n ? o.n : 3;
    if (n < 3 || n > 8) throw DomainError("--n must be between 3 and 8 for example1");
    std::vector<unsigned> d(n, 25), e(n - 1, 25);
    if (!o.exponents.empty()) {
      auto all = parse_unsigned_list(o.exponents, "exponent");
      if (all.size() == n) {
        d = all;
      } else if (all.size() == 2 * n - 1) {
        d.assign(all.begin(), all.begin() + n);
        e.assign(all.begin() + n, all.end());
      } else {
        throw DomainError("--exponents needs n or 2n-1 entries");
      }
    }
    if (!o.e_exponents.empty()) e = parse_unsigned_list(o.e_exponents, "exponent");
    return build_example1(n, d, e);
  }
  if (o.exponents.empty()) return build_section4();
  return build_section4(parse_unsigned_list(o.exponents, "exponent"));
}

Json ring_json(const ExampleRing& r) {
  const auto& ctx = *r.quotient.ambient();
  const auto& order = r.quotient.order();
  Json j;
  j["variables"] = ctx.names();
  if (ctx.has_weights()) j["weights"] = ctx.weights();
  j["order"] = order.describe();
  j["modulus"] = format_poly(r.quotient.modulus(), order);
  Json exps = Json::array();
  for (const auto& [f, d] : r.power_terms) exps.push_back(d);
  j["exponents"] = std::move(exps);
  Json imgs = Json::object();
  for (std::size_t i = 0; i < ctx.size(); ++i) imgs[ctx.name(i)] = format_poly(r.derivation.image(i), order);
  j["derivation"] = std::move(imgs);
  Json named = Json::object();
  for (const auto& [k, v] : r.named)
    if (k != "P") named[k] = format_poly(v, order);
  j["elements"] = std::move(named);
  return j;
}

Report cmd_build(const Options& o, Session& s, bool example1) {
  auto ring = ring_for(o, example1);
  Report rep;
  rep.result = ring_json(ring);
  // Named kernel elements: coordinates x.., y, z and the l-invariants. The fibre
  // coordinates (s, t, u, v and the y_i of the first ring) are not.
  for (const auto& [k, v] : ring.named)
    if (k == "P" || k[0] == 'x' || k[0] == 'l' || (!example1 && (k == "y" || k == "z"))) rep.check("D(" + k + ") = 0", ring.derivation(v).is_zero());
  rep.check("D(P) in (P)", induces_derivation(ring.quotient, ring.derivation));
  rep.check("triangular", certify_triangular(ring.derivation).status == NilpotencyStatus::certified_nilpotent);
  rep.headline = example1 ? "example ring with n = " + std::to_string(ring.quotient.ambient()->size() / 2) + " built"
                          : "seven-variable example ring built";
  (void)s;
  return rep;
}

Report cmd_apply(const Options& o, Session& s) {
  s.load_derivation_text();
  s.resolve_context(o.polys, s.derivation_text.empty());
  std::optional<Polynomial> slot;
  const auto& f = single_poly(o, s, slot);
  auto d = s.derivation();
  auto image = d(f);
  Polynomial leibniz(s.ctx);
  for (std::size_t v = 0; v < s.ctx->size(); ++v) leibniz = leibniz + partial_derivative(f, v) * d.image(v);
  Report rep;
  rep.headline = s.fmt(image);
  rep.result["input"] = s.fmt(f);
  rep.result["image"] = s.fmt(image);
  rep.check("image equals sum of partials times images", leibniz == image);
  return rep;
}

Report cmd_nilpotent(const Options& o, Session& s) {
  s.load_derivation_text();
  s.resolve_context(o.polys, s.derivation_text.empty());
  auto d = s.derivation();
  Report rep;
  auto tri = certify_triangular(d);
  rep.result["derivation"] = nilpotency_json(tri, *s.ctx);
  if (o.polys.empty()) {
    rep.headline = to_string(tri.status);
    rep.check("derivation certified locally nilpotent", tri.status == NilpotencyStatus::certified_nilpotent);
    return rep;
  }
  std::optional<Polynomial> slot;
  const auto& f = single_poly(o, s, slot);
  if (o.max_order == 0) throw DomainError("--max-order must be positive");
  auto r = nilpotency_order(d, f, o.max_order);
  rep.result["input"] = s.fmt(f);
  rep.result["element"] = {{"status", to_string(r.status)}, {"order", r.order ? Json(*r.order) : Json(nullptr)}};
  rep.headline = r.order ? "order " + std::to_string(*r.order) : to_string(r.status);
  bool ok = r.order.has_value();
  if (ok) {
    ok = iterate(d, f, *r.order).is_zero() && (*r.order == 1 || f.is_zero() || !iterate(d, f, *r.order - 1).is_zero());
  }
  rep.check("order re-verified by iteration", ok);
  return rep;
}

Report cmd_exp(const Options& o, Session& s) {
  s.load_derivation_text();
  s.resolve_context(o.polys, s.derivation_text.empty());
  std::optional<Polynomial> slot;
  const auto& f = single_poly(o, s, slot);
  auto d = s.derivation();
  auto e = exp_action(d, f, o.param, o.max_order);
  const auto& ext = e.context();
  const auto t = ext->require(o.param);
  auto coeffs = coefficients_in(e, t);
  auto order = MonomialOrder::lex(ext->size());
  Report rep;
  rep.headline = format_poly(e, order);
  rep.result["input"] = s.fmt(f);
  rep.result["parameter"] = o.param;
  rep.result["action"] = format_poly(e, order);
  auto coeff = [&](unsigned k) { return k < coeffs.size() ? coeffs[k] : Polynomial(ext); };
  rep.check("t^0 coefficient is f", coeff(0) == embed(f, ext));
  rep.check("t^1 coefficient is D(f)", coeff(1) == embed(d(f), ext));
  return rep;
}

QuotientRing quotient_for(const Options& o, Session& s) {
  if (!o.quotient_file.empty()) {
    auto text = read_file(o.quotient_file);
    s.digest.add("quotient-file", text);
    auto q = parse_quotient_description(text);
    s.ctx = q.ambient();
    s.order = q.order();
    return q;
  }
  if (o.modulus.empty()) throw DomainError("pass --modulus or --quotient");
  auto texts = o.polys;
  texts.push_back(o.modulus);
  s.resolve_context(texts, false);
  return QuotientRing(parse_poly(o.modulus, s.ctx), *s.order);
}

Report cmd_quotient_reduce(const Options& o, Session& s) {
  auto q = quotient_for(o, s);
  std::optional<Polynomial> slot;
  const auto& f = single_poly(o, s, slot);
  auto r = normal_form(q, f);
  Report rep;
  rep.headline = s.fmt(r);
  rep.result["modulus"] = s.fmt(q.modulus());
  rep.result["order"] = q.order().describe();
  rep.result["input"] = s.fmt(f);
  rep.result["normal_form"] = s.fmt(r);
  rep.check("normal form is idempotent", normal_form(q, r) == r);
  auto [quo, rem] = divide(f - r, q.modulus(), MonomialOrder::lex(s.ctx->size()));
  rep.check("input minus normal form lies in (P)", rem.is_zero());
  const auto& lead = q.modulus_lead().mono;
  rep.check("no term divisible by the leading monomial of P",
            std::none_of(r.terms().begin(), r.terms().end(), [&](const Term& t) { return lead.divides(t.mono); }));
  return rep;
}

Json degree_json(Degree d) { return d.is_neg_infinity() ? Json("-inf") : Json(d.value()); }

Report cmd_mason(const Options& o, Session& s) {
  if (o.polys.size() != 2) throw DomainError("mason needs two --poly values");
  s.resolve_context(o.polys, false);
  auto f = parse_poly(o.polys[0], s.ctx);
  auto g = parse_poly(o.polys[1], s.ctx);
  auto m = mason_check(f, g);
  Report rep;
  rep.result["f"] = s.fmt(f);
  rep.result["g"] = s.fmt(g);
  rep.result["h"] = s.fmt(Polynomial(s.ctx) - f - g);
  rep.result["deg_f"] = degree_json(m.deg_f);
  rep.result["deg_g"] = degree_json(m.deg_g);
  rep.result["deg_h"] = degree_json(m.deg_h);
  rep.result["deg_radical_fgh"] = degree_json(m.deg_radical);
  rep.result["coprime"] = m.coprime;
  rep.result["all_constant"] = m.all_constant;
  rep.result["applicable"] = m.applicable();
  if (m.applicable()) {
    rep.result["holds"] = m.holds;
    rep.result["slack"] = m.slack;
    rep.headline = m.holds ? "Mason-Stothers bound holds" : "Mason-Stothers bound VIOLATED";
  } else {
    rep.headline = "hypotheses not met; bound not asserted";
  }
  rep.check("bound holds whenever applicable", !m.applicable() || m.holds);
  return rep;
}

Report cmd_catalan_bound(const Options& o, Session&) {
  auto exps = parse_unsigned_list(o.exponents.empty() ? "25,25,25,25,25,25" : o.exponents, "exponent");
  auto b = catalan_bound_check(exps);
  Report rep;
  rep.result["exponents"] = exps;
  rep.result["reciprocal_sum"] = format_rational(b.reciprocal_sum);
  rep.result["bound"] = format_rational(b.bound);
  rep.result["satisfied"] = b.satisfied;
  rep.headline = format_rational(b.reciprocal_sum) + (b.satisfied ? " <= " : " > ") + format_rational(b.bound);
  rep.check("reciprocal sum within bound", b.satisfied);
  return rep;
}

Report cmd_rigidity_cert(const Options& o, Session& s) {
  std::optional<RigidityCertificate> cert;
  if (!o.terms.empty()) {
    std::vector<std::string> texts;
    std::vector<std::pair<std::string, unsigned>> raw;
    for (const auto& t : o.terms) {
      auto colon = t.rfind(':');
      if (colon == std::string::npos) throw DomainError("--term must look like POLY:EXPONENT");
      auto e = parse_unsigned_list(t.substr(colon + 1), "exponent");
      if (e.size() != 1) throw DomainError("--term must look like POLY:EXPONENT");
      raw.emplace_back(t.substr(0, colon), e[0]);
      texts.push_back(raw.back().first);
    }
    s.resolve_context(texts, false);
    std::vector<std::pair<Polynomial, unsigned>> terms;
    for (const auto& [p, e] : raw) terms.emplace_back(parse_poly(p, s.ctx), e);
    std::optional<SpecializationPlan> plan;
    if (!o.main_var.empty()) {
      SpecializationPlan pl;
      pl.main = s.ctx->require(o.main_var);
      for (const auto& v : split_list(o.kill)) pl.kill.push_back(s.ctx->require(v));
      plan = pl;
    }
    cert = build_rigidity_certificate(s.ctx, terms, plan);
  } else {
    if (o.example != "section4" && o.example != "example1") throw DomainError("--example must be section4 or example1");
    auto ring = ring_for(o, o.example == "example1");
    cert = build_rigidity_certificate(ring.quotient.ambient(), ring.power_terms, ring.plan);
  }
  Report rep;
  rep.result = certificate_json(*cert);
  rep.headline = cert->complete() ? "rigidity certificate complete" : "rigidity certificate INCOMPLETE";
  rep.check("reciprocal bound", cert->bound.satisfied);
  rep.check("no proper subsum vanishes modulo P",
            std::none_of(cert->subsums.begin(), cert->subsums.end(), [](const SubsumCheck& c) { return c.vanishes; }));
  rep.check("P certified irreducible", cert->primality.status == IrreducibilityStatus::irreducible_certified);
  return rep;
}

Report cmd_kernel_search(const Options& o, Session&) {
  auto ring = ring_for(o, false);
  auto g = section4_grading(ring.quotient.ambient());
  Report rep;
  if (o.max_weight > 0) {
    Json table = Json::array();
    for (std::uint64_t w = 0; w <= o.max_weight; ++w)
      for (unsigned k = 0; 6 * k <= w; ++k) {
        auto slice = graded_basis(g, w, k);
        if (slice.basis.empty()) continue;
        table.push_back({{"weight", w}, {"stuv_degree", k}, {"basis_size", slice.basis.size()},
                         {"kernel_dimension", kernel_slice_dimension(ring.derivation, g, slice)}});
      }
    rep.result["slices"] = std::move(table);
    rep.headline = "kernel dimensions for weight <= " + std::to_string(o.max_weight);
    return rep;
  }
  auto slice = graded_basis(g, o.weight, o.fiber_degree);
  auto els = kernel_slice(ring.derivation, g, slice);
  rep.result["weight"] = o.weight;
  rep.result["stuv_degree"] = o.fiber_degree;
  rep.result["basis_size"] = slice.basis.size();
  rep.result["kernel_dimension"] = els.size();
  Json list = Json::array();
  for (const auto& e : els)
    list.push_back({{"polynomial", format_poly(e.polynomial, g.order)},
                    {"leading_monomial", format_monomial(e.leading, *g.ctx)}});
  rep.result["elements"] = std::move(list);
  rep.headline = std::to_string(els.size()) + " kernel elements";
  rep.check("every element re-verified", std::all_of(els.begin(), els.end(), [](const auto& e) { return e.verified; }));
  rep.check("dimension matches independent count",
            kernel_slice_dimension(ring.derivation, g, slice) == els.size());
  return rep;
}

void fn_checks(Report& rep, const KernelElement& el, unsigned n, const Derivation& e, const KernelGrading& g) {
  const auto& ctx = g.ctx;
  Monomial target = Monomial::variable(ctx->size(), ctx->require("X"));
  target[ctx->require("V")] = n;
  rep.check("E(F_n) = 0 re-applied", e(el.polynomial).is_zero());
  rep.check("leading monomial is X*V^n", el.leading == target);
  auto rest = el.polynomial - Polynomial::monomial(ctx, target);
  auto dv = rest.degree_in(ctx->require("V"));
  rep.check("remainder has V-degree < n", dv.is_neg_infinity() || dv.value() < static_cast<std::int64_t>(n));
}

unsigned require_n(const Options& o) {
  if (o.n == 0) throw DomainError("--n must be a positive integer");
  if (o.n > 12) throw DomainError("--n above 12 is outside the supported range");
  return o.n;
}

Report cmd_find_fn(const Options& o, Session&) {
  const unsigned n = require_n(o);
  auto ring = ring_for(o, false);
  auto g = section4_grading(ring.quotient.ambient());
  auto el = find_Fn(ring.derivation, g, n);
  Report rep;
  rep.result = kernel_element_json(n, el, g);
  rep.headline = format_poly(el.polynomial, g.order);
  fn_checks(rep, el, n, ring.derivation, g);
  return rep;
}

Report cmd_escape_check(const Options& o, Session&) {
  const unsigned n = o.n ? require_n(o) : 1;
  auto ring = ring_for(o, false);
  auto g = section4_grading(ring.quotient.ambient());
  auto fn = find_Fn(ring.derivation, g, n);
  auto r = escape_check(ring, g, n, fn, o.control);
  Report rep;
  rep.result = escape_json(r, *g.ctx);
  rep.headline = escape_headline(r);
  rep.check("F_n remainder in filtration", r.remainder_in_filtration);
  if (o.control)
    rep.check("adjoined target is found in the span", r.member);
  else
    rep.check("target escapes the span", r.escapes());
  return rep;
}

Report cmd_l5_check(const Options& o, Session& s) {
  auto ring = ring_for(o, false);
  auto g = section4_grading(ring.quotient.ambient());
  std::vector<std::pair<std::string, Polynomial>> targets;
  if (!o.polys.empty()) {
    for (const auto& p : o.polys) targets.emplace_back(p, parse_poly(p, ring.quotient.ambient()));
  } else if (o.n > 0) {
    targets.emplace_back("F_" + std::to_string(o.n), find_Fn(ring.derivation, g, require_n(o)).polynomial);
  } else {
    for (const char* k : {"x", "y", "z", "l1", "l2", "l3"}) targets.emplace_back(k, ring.element(k));
  }
  Report rep;
  Json list = Json::array();
  std::size_t members = 0;
  for (const auto& [label, f] : targets) {
    auto m = l5_membership(ring, f);
    Json j = {{"label", label}, {"polynomial", format_poly(f, g.order)}};
    j.update(membership_json(m, g.order));
    list.push_back(std::move(j));
    rep.check(label + " in (x,y,z)A + C[x,y,z]", m.member);
    members += m.member ? 1 : 0;
  }
  rep.result["elements"] = std::move(list);
  rep.headline = std::to_string(members) + "/" + std::to_string(targets.size()) + " decompose";
  (void)s;
  return rep;
}

Report cmd_reproduce(const Options& o, Session&) {
  if (o.out_dir.empty()) throw DomainError("reproduce needs --out DIR");
  if (o.n_max == 0 || o.n_max > 6) throw DomainError("--n-max must be between 1 and 6");
  ReproduceOptions ro;
  ro.out_dir = o.out_dir;
  ro.n_max = o.n_max;
  if (!o.exponents.empty()) ro.exponents = parse_unsigned_list(o.exponents, "exponent");
  if (ro.exponents.size() != 6) throw DomainError("--exponents needs six entries");
  for (auto x : ro.exponents)
    if (x < 2) throw DomainError("exponents must be at least 2");
  return reproduce_pipeline(ro);
}

using Handler = std::function<Report(const Options&, Session&)>;

}  // namespace

Json certificate_json(const RigidityCertificate& cert) {
  Json j;
  j["exponents"] = cert.exponents;
  j["reciprocal_sum"] = cert.bound.reciprocal_sum.get_str();
  j["bound"] = "1/(" + std::to_string(cert.exponents.size()) + "-2)";
  j["bound_value"] = cert.bound.bound.get_str();
  j["bound_ok"] = cert.bound.satisfied;
  Json subs = Json::array();
  for (const auto& s : cert.subsums) subs.push_back({{"indices", s.indices}, {"vanishes", s.vanishes}});
  j["subsums"] = std::move(subs);
  Json prim;
  prim["status"] = to_string(cert.primality.status);
  prim["witness"] = cert.primality.witness;
  if (cert.primality.factor) prim["factor"] = format_poly(*cert.primality.factor);
  if (cert.plan) {
    const auto& ctx = *cert.modulus.context();
    Json kill = Json::array();
    for (auto v : cert.plan->kill) kill.push_back(ctx.name(v));
    prim["kill"] = std::move(kill);
    prim["main"] = ctx.name(cert.plan->main);
  }
  j["primality"] = std::move(prim);
  j["complete"] = cert.complete();
  return j;
}

Json kernel_element_json(unsigned n, const KernelElement& el, const KernelGrading& g) {
  Json j;
  j["n"] = n;
  j["polynomial"] = format_poly(el.polynomial, g.order);
  j["verified"] = el.verified;
  j["leading_monomial"] = format_monomial(el.leading, *g.ctx);
  j["slice"] = {{"weight", el.weight}, {"stuv_degree", el.fiber_degree}, {"basis_size", el.basis_size}};
  return j;
}

Json membership_json(const MembershipResult& m, const MonomialOrder& order) {
  Json j;
  j["member"] = m.member;
  j["ideal_part"] = m.ideal_part ? Json(format_poly(*m.ideal_part, order)) : Json(nullptr);
  j["subring_part"] = m.subring_part ? Json(format_poly(*m.subring_part, order)) : Json(nullptr);
  j["degree_bound"] = m.degree_bound;
  j["columns"] = m.generators;
  j["rank"] = m.rank;
  return j;
}

Json escape_json(const EscapeReport& rep, const RingContext& ctx) {
  Json j;
  j["n"] = rep.n;
  j["target"] = format_monomial(rep.target, ctx);
  j["control"] = rep.control;
  j["member"] = rep.member;
  j["escapes"] = rep.escapes();
  j["remainder_in_filtration"] = rep.remainder_in_filtration;
  j["modulus_multiples"] = rep.modulus_multiples;
  j["uncovered_coordinates"] = rep.uncovered_coordinates;
  j["span_rank"] = rep.span_rank;
  j["augmented_rank"] = rep.augmented_rank;
  return j;
}

std::string escape_headline(const EscapeReport& rep) {
  std::string target = "XV" + (rep.n == 1 ? std::string() : "^" + std::to_string(rep.n));
  std::string space = "F_" + std::to_string(rep.n) + "(A)+(x,y,z)^2";
  if (rep.control) return target + (rep.member ? " lies in " : " is missing from ") + space + " with the target adjoined";
  return target + (rep.escapes() ? " escapes " : " lies in ") + space;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact algebra toolkit for locally nilpotent derivations", "lndlab"};
  app.require_subcommand(1);
  std::map<CLI::App*, Handler> handlers;

  auto json_out = [&](CLI::App* c) { c->add_flag("--json", o.json, "Emit the JSON report"); };
  auto ring_flags = [&](CLI::App* c) {
    c->add_option("--vars", o.vars, "Comma-separated variable names");
    c->add_option("--weights", o.weights, "Comma-separated positive weights");
    c->add_option("--order", o.order, "Monomial order: lex or wgrlex");
  };
  auto exps = [&](CLI::App* c) { c->add_option("--exponents", o.exponents, "Comma-separated exponents"); };
  auto sub = [&](const std::string& name, const std::string& desc, Handler h) {
    auto* c = app.add_subcommand(name, desc);
    json_out(c);
    handlers[c] = std::move(h);
    return c;
  };

  for (auto [name, desc, h] : {std::tuple<const char*, const char*, Handler>{"apply", "Apply a derivation", cmd_apply},
                              {"nilpotent", "Certify local nilpotency", cmd_nilpotent},
                              {"exp", "Exponential action exp(tD)", cmd_exp}}) {
    auto* c = sub(name, desc, h);
    c->add_option("--derivation", o.derivation_file, "Derivation file (default: E on the seven-variable ring)");
    c->add_option("--poly", o.polys, "Polynomial");
    ring_flags(c);
    if (std::string(name) != "apply") c->add_option("--max-order", o.max_order, "Iteration bound");
    if (std::string(name) == "exp") c->add_option("--param", o.param, "Name of the fresh parameter");
  }
  {
    auto* c = sub("quotient-reduce", "Normal form modulo P", cmd_quotient_reduce);
    c->add_option("--modulus", o.modulus, "Modulus P");
    c->add_option("--quotient", o.quotient_file, "Quotient description JSON file");
    c->add_option("--poly", o.polys, "Polynomial to reduce");
    ring_flags(c);
  }
  {
    auto* c = sub("mason", "Mason-Stothers degree check for f + g + h = 0", cmd_mason);
    c->add_option("--poly", o.polys, "f and g (give --poly twice)");
    ring_flags(c);
  }
  exps(sub("catalan-bound", "Reciprocal bound on exponents", cmd_catalan_bound));
  {
    auto* c = sub("rigidity-cert", "Rigidity certificate for a power sum", cmd_rigidity_cert);
    c->add_option("--example", o.example, "section4 or example1");
    c->add_option("--n", o.n, "Size of example1");
    exps(c);
    c->add_option("--term", o.terms, "POLY:EXPONENT, repeatable");
    c->add_option("--kill", o.kill, "Variables set to zero for the primality test");
    c->add_option("--main", o.main_var, "Main variable for the primality test");
    ring_flags(c);
  }
  {
    auto* c = sub("build-example1", "Build the 2n-variable example ring", [](const Options& op, Session& s) {
      return cmd_build(op, s, true);
    });
    c->add_option("--n", o.n, "Number of variable pairs (>= 3)");
    exps(c);
    c->add_option("--e-exponents", o.e_exponents, "Exponents e_2..e_n");
  }
  exps(sub("build-section4", "Build the seven-variable example ring",
           [](const Options& op, Session& s) { return cmd_build(op, s, false); }));
  {
    auto* c = sub("kernel-search", "Kernel of E on a graded slice", cmd_kernel_search);
    c->add_option("--weight", o.weight, "Weighted degree");
    c->add_option("--stuv-degree", o.fiber_degree, "Total degree in S, T, U, V");
    c->add_option("--max-weight", o.max_weight, "Tabulate dimensions of all slices up to this weight");
    exps(c);
  }
  {
    auto* c = sub("find-fn", "Kernel element X*V^n + lower terms", cmd_find_fn);
    c->add_option("--n", o.n, "Exponent n")->required();
    exps(c);
  }
  {
    auto* c = sub("escape-check", "Check that X*V^n escapes the filtration span", cmd_escape_check);
    c->add_option("--n", o.n, "Exponent n (default 1)");
    c->add_flag("--control", o.control, "Adjoin the target to the span");
    exps(c);
  }
  {
    auto* c = sub("l5-check", "Membership in (x,y,z)A + C[x,y,z]", cmd_l5_check);
    c->add_option("--poly", o.polys, "Element to test (default: generators)");
    c->add_option("--n", o.n, "Test F_n instead");
    exps(c);
  }
  {
    auto* c = sub("reproduce", "Run the full pipeline and write reports", cmd_reproduce);
    c->add_option("--out", o.out_dir, "Output directory")->required();
    c->add_option("--n-max", o.n_max, "Largest n for F_n and escape checks");
    exps(c);
  }

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !app.get_subcommand_no_throw(args[0])) {
    err << "lndlab: unknown command '" << args[0] << "'\n";
    return exit_invalid_input;
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "lndlab: " << e.what() << '\n';
    return exit_invalid_input;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Session session(o);
  add_args_to_digest(session.digest, args);
  try {
    Report rep = handlers.at(chosen)(o, session);
    rep.command = chosen->get_name();
    if (rep.digest.empty()) rep.digest = session.digest.hex();
    rep.write(out, o.json);
    return rep.exit_status();
  } catch (const ParseError& e) {
    err << "lndlab: invalid input: " << e.what() << '\n';
  } catch (const UnknownVariable& e) {
    err << "lndlab: invalid input: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "lndlab: invalid input: " << e.what() << '\n';
  } catch (const ContextMismatch& e) {
    err << "lndlab: invalid input: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "lndlab: verification failed: " << e.what() << '\n';
    return exit_verification_failed;
  }
  return exit_invalid_input;
}

}  // namespace lndlab::cli
