#include "qveq/commands.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "qveq/equation.hpp"
#include "qveq/fixture.hpp"
#include "qveq/fuzzy.hpp"
#include "qveq/identity.hpp"
#include "qveq/matrix.hpp"
#include "qveq/rng.hpp"
#include "qveq/stability.hpp"

namespace qveq {

namespace {

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

EquationFamily family_for(const RunConfig& cfg) {
  try {
    return EquationFamily::of_degree(cfg.degree);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Rat parse_rat_or(const std::string& text, const char* what) {
  try {
    return rat_from_string(text);
  } catch (const std::invalid_argument&) {
    throw ConfigError(std::string("invalid ") + what + ": '" + text + "'");
  }
}

Json identity_json(const FormalIdentity& id) {
  Json terms = Json::array();
  for (const auto& [j, c] : id.coeffs)
    terms.push_back(Json{{"j", j}, {"coeff", c.get_str()}});
  return terms;
}

Json config_echo(const RunConfig& cfg) {
  Json j = Json::object();
  j["command"] = cfg.command;
  j["degree"] = cfg.degree;
  j["mode"] = cfg.mode;
  j["precision"] = cfg.precision;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["range"] = cfg.range;
  j["function"] = cfg.function;
  if (cfg.command == "replay") {
    j["replay_mode"] = cfg.replay_mode;
    j["diff"] = cfg.diff;
    j["alt_seed"] = cfg.alt_seed;
    j["fixture"] = cfg.fixture_path.empty() ? "builtin" : cfg.fixture_path;
  }
  if (cfg.command == "stability") {
    j["control"] = cfg.control;
    j["q"] = cfg.q;
    j["iterations"] = cfg.iterations;
    j["kappa"] = cfg.kappa.empty() ? "derived" : cfg.kappa;
    j["eps"] = cfg.eps;
    j["matrix_n"] = cfg.matrix_n;
    j["constants_only"] = cfg.constants_only;
    if (cfg.constants_only) {
      j["which"] = cfg.which;
      j["a"] = cfg.exp_a;
      j["b"] = cfg.exp_b;
      j["l"] = cfg.exp_l;
    }
  }
  if (cfg.command == "fuzzy") {
    j["p"] = cfg.prime;
    j["q"] = cfg.q;
    j["kappa"] = cfg.kappa.empty() ? "derived" : cfg.kappa;
    j["iterations"] = cfg.iterations;
    j["matrix_n"] = cfg.matrix_n;
  }
  return j;
}

struct ParsedControl {
  ControlFunction<Rat>::Kind kind;
  long l = 0, a = 0, b = 0;  // integer exponents; the CLI surface stays rational
};

ParsedControl parse_control_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  ParsedControl pc;
  long* fields[3] = {nullptr, nullptr, nullptr};
  if (head == "power") {
    pc.kind = ControlFunction<Rat>::Kind::PowerSum;
  } else if (head == "product") {
    pc.kind = ControlFunction<Rat>::Kind::PowerProduct;
  } else if (head == "mixed") {
    pc.kind = ControlFunction<Rat>::Kind::Mixed;
  } else {
    throw ConfigError("unknown control '" + head + "' (expected power|product|mixed)");
  }
  (void)fields;
  std::stringstream ss(body);
  std::string item;
  bool saw_l = false, saw_a = false, saw_b = false;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("control spec: expected key=value");
    const std::string key = item.substr(0, eq);
    long value;
    try {
      value = std::stol(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("control spec: integer exponent expected in '" + item + "'");
    }
    if (key == "l") {
      pc.l = value;
      saw_l = true;
    } else if (key == "a") {
      pc.a = value;
      saw_a = true;
    } else if (key == "b") {
      pc.b = value;
      saw_b = true;
    } else {
      throw ConfigError("control spec: unknown key '" + key + "'");
    }
  }
  if (pc.kind == ControlFunction<Rat>::Kind::PowerSum) {
    if (!saw_l) throw ConfigError("control spec: power requires l=");
  } else {
    if (!saw_a || !saw_b) throw ConfigError("control spec: product/mixed require a=,b=");
    pc.l = pc.a + pc.b;
  }
  return pc;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

void run_verify(const RunConfig& cfg, ReportDocument& rep) {
  const EquationFamily fam = family_for(cfg);
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  if (cfg.mode != "exact" && cfg.mode != "bigreal")
    throw ConfigError("mode must be exact or bigreal");

  RationalPoly f;
  try {
    f = RationalPoly::parse(cfg.function, fam.degree);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  SampleRng rng(cfg.seed);
  const auto pairs = rng.rational_pairs(static_cast<std::size_t>(cfg.samples));

  if (cfg.mode == "exact") {
    const auto scan = residual_scan<Rat>(fam, f, pairs);
    Json rows = Json::array();
    for (const auto& s : scan.samples)
      rows.push_back(Json{{"u", value_json(s.u)}, {"v", value_json(s.v)},
                          {"h", value_json(s.h)}});
    rep.add_pass("equation_residual",
                 Json{{"max_abs_residual", value_json(scan.max_abs)},
                      {"rows", std::move(rows)}},
                 scan.max_abs == 0);
  } else {
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(cfg.precision);
    BigReal max_abs(prec), max_mag(prec);
    Json rows = Json::array();
    for (const auto& [ur, vr] : pairs) {
      const BigReal u = BigReal::of(ur, prec);
      const BigReal v = BigReal::of(vr, prec);
      const auto hv = eval_h_conditioned(fam, f, u, v);
      if (hv.value.abs() > max_abs) max_abs = hv.value.abs();
      if (hv.term_magnitude > max_mag) max_mag = hv.term_magnitude;
      rows.push_back(Json{{"u", value_json(u)},
                          {"v", value_json(v)},
                          {"h", value_json(hv.value)},
                          {"conditioning", value_json(hv.conditioning())}});
    }
    // residuals are judged relative to the summed term magnitude
    const BigReal tol =
        BigReal::of(1L, prec).mul_pow2(-static_cast<long>(cfg.precision) / 2);
    const BigReal allowed = tol * (BigReal::of(1L, prec) + max_mag);
    rep.add_pass("equation_residual",
                 Json{{"max_abs_residual", value_json(max_abs)},
                      {"max_term_magnitude", value_json(max_mag)},
                      {"allowed", value_json(allowed)},
                      {"rows", std::move(rows)}},
                 max_abs <= allowed);
  }

  std::vector<Rat> xs;
  xs.reserve(static_cast<std::size_t>(cfg.samples));
  for (long i = 0; i < cfg.samples; ++i) xs.push_back(rng.rational());
  const auto sym = symmetry_checks<Rat>(f, xs, Rat(0));
  Json bad = Json::array();
  for (const auto& row : sym.rows)
    if (!row.odd_ok) bad.push_back(value_json(row.x));
  rep.add_pass("symmetry",
               Json{{"zero_at_zero", sym.zero_ok}, {"odd_violations", std::move(bad)}},
               sym.all_ok());
}

// ---------------------------------------------------------------------------
// replay
// ---------------------------------------------------------------------------

void run_replay(const RunConfig& cfg, ReportDocument& rep) {
  const EquationFamily fam = family_for(cfg);

  if (cfg.replay_mode == "auto") {
    const auto instances = default_instances(fam);
    Json inst_json = Json::array();
    for (const auto& i : instances) inst_json.push_back(Json{{"a", i.a}, {"b", i.b}});
    try {
      const auto cert = auto_eliminate(fam, instances);
      Json steps = Json::array();
      for (const auto& st : cert.steps)
        steps.push_back(Json{{"eliminated_index", st.eliminated_index},
                             {"pivot_row", st.pivot_row},
                             {"pivot_coefficient", st.pivot_coefficient.get_str()},
                             {"updated_rows", st.updated_rows}});
      const Rat ratio = cert.ratio();
      const Rat expected = rat_pow2(fam.degree);
      // soundness probe: the result must vanish on the monomial solution
      const bool sound =
          evaluate_on_monomial(cert.result, Rat(1), Rat(1), fam.degree) == 0;
      rep.add_pass("elimination_certificate",
                   Json{{"instances", std::move(inst_json)},
                        {"steps", std::move(steps)},
                        {"identity", identity_json(cert.result)},
                        {"ratio", value_json(ratio)},
                        {"expected_ratio", value_json(expected)},
                        {"vanishes_on_monomial", sound}},
                   ratio == expected && sound);
    } catch (const EliminationError& e) {
      rep.add_pass("elimination_certificate",
                   Json{{"instances", std::move(inst_json)}, {"error", e.what()}}, false);
    }
    return;
  }

  if (cfg.replay_mode != "scripted")
    throw ConfigError("replay mode must be auto or scripted");
  if (fam.degree != 25)
    throw ConfigError("the scripted cascade is specific to degree 25");

  const CascadeFixture* fixture = &CascadeFixture::builtin();
  CascadeFixture loaded;
  if (!cfg.fixture_path.empty()) {
    try {
      loaded = CascadeFixture::load(cfg.fixture_path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    fixture = &loaded;
  }

  const CascadeScript script = cfg.alt_seed ? corrected_seed_script() : printed_script();
  const auto cascade = scripted_cascade(fam, script);

  // every cascade row is an integer combination of equation instances, so it
  // must vanish on the monomial solution; this is checked unconditionally
  bool sound = true;
  Json rows = Json::array();
  for (std::size_t i = 0; i < cascade.size(); ++i) {
    if (evaluate_on_monomial(cascade[i], Rat(1), Rat(1), fam.degree) != 0) sound = false;
    rows.push_back(Json{{"step", i}, {"terms", identity_json(cascade[i])}});
  }
  rep.add_pass("cascade_soundness", Json{{"identities", std::move(rows)}}, sound);

  // what the final combination actually is, reported rather than assumed
  const FormalIdentity& last = cascade.back();
  Json final_json = Json{{"support", last.support()}, {"terms", identity_json(last)}};
  bool is_doubling = false;
  if (last.support() == std::vector<long>{1, 2}) {
    const auto it1 = last.coeffs.find(1);
    const auto it2 = last.coeffs.find(2);
    const Rat ratio = make_rat(-it1->second, it2->second);
    final_json["ratio"] = value_json(ratio);
    is_doubling = ratio == rat_pow2(fam.degree);
  }
  final_json["is_doubling_identity"] = is_doubling;
  final_json["seed"] = Json{{"minuend", Json{{"a", script.seed_minuend.a}, {"b", script.seed_minuend.b}}},
                            {"subtrahend", Json{{"a", script.seed_subtrahend.a}, {"b", script.seed_subtrahend.b}}}};
  rep.add_info("final_identity", std::move(final_json));

  // multiplier pattern against the printed script
  Json pattern = Json::array();
  for (const auto& cmpn : multiplier_pattern_check(fam)) {
    pattern.push_back(Json{{"j", cmpn.j},
                           {"pattern", cmpn.pattern_value.get_str()},
                           {"scripted", cmpn.scripted_value.get_str()},
                           {"match", cmpn.match}});
    if (!cmpn.match)
      rep.errata.push_back(Json{{"equation", "(script)"},
                                {"index", cmpn.j},
                                {"verdict", "multiplier_pattern_mismatch"},
                                {"computed", cmpn.pattern_value.get_str()},
                                {"printed", cmpn.scripted_value.get_str()},
                                {"note", "published step multiplier differs from "
                                         "C(25,13-j)+C(25,11-j)"}});
  }
  rep.add_info("multiplier_pattern", Json{{"rows", std::move(pattern)}});

  if (cfg.diff) {
    // the labeled table covers the seed plus the first twelve steps; the final
    // combination has no printed counterpart and is analyzed above
    std::vector<FormalIdentity> labeled(
        cascade.begin(),
        cascade.begin() + std::min(cascade.size(), fixture->equations.size()));
    const auto diff = diff_against_reference(labeled, *fixture, fam);
    for (const auto& e : diff.entries) {
      Json j = Json{{"equation", e.equation},
                    {"index", e.index},
                    {"verdict", e.verdict},
                    {"computed", e.computed},
                    {"printed", e.printed}};
      if (e.rel_diff) j["rel_diff"] = *e.rel_diff;
      if (!e.note.empty()) j["note"] = e.note;
      rep.errata.push_back(std::move(j));
    }
    rep.add_info("reference_diff",
                 Json{{"comparisons", diff.comparisons},
                      {"exact_matches", diff.exact_matches},
                      {"print_precision_matches", diff.print_precision_matches},
                      {"mismatches", diff.mismatches}});
  }
}

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------

void add_bundle_result(ReportDocument& rep, const std::string& name,
                       const ConstantsBundle& bundle, bool is_check) {
  Json diffs = Json::array();
  for (const auto& d : bundle.diffs)
    diffs.push_back(Json{{"term", d.term},
                         {"printed", d.printed.get_str()},
                         {"recomputed", d.recomputed.get_str()}});
  Json details = Json{{"printed_constant", bundle.printed.constant.get_str()},
                      {"recomputed_constant", bundle.recomputed.constant.get_str()},
                      {"discrepancy", bundle.discrepancy},
                      {"diffs", diffs}};
  if (is_check)
    rep.add_pass(name, std::move(details), !bundle.discrepancy);
  else
    rep.add_info(name, std::move(details));
  if (bundle.discrepancy) {
    for (const auto& d : bundle.diffs)
      rep.errata.push_back(Json{{"equation", name},
                                {"index", -1},
                                {"verdict", "constant_mismatch"},
                                {"term", d.term},
                                {"computed", d.recomputed.get_str()},
                                {"printed", d.printed.get_str()},
                                {"note", "recomputed value is authoritative"}});
  }
}

void run_constants_only(const RunConfig& cfg, ReportDocument& rep) {
  ConstantsBundle bundle;
  if (cfg.which == "power")
    bundle = omega0_power();
  else if (cfg.which == "product")
    bundle = omega0_product();
  else if (cfg.which == "mixed")
    bundle = omega0_mixed();
  else
    throw ConfigError("--which must be one of power|product|mixed");

  // the power-sum comparison is emitted whichever way it falls; the product
  // and mixed constants must match exactly
  add_bundle_result(rep, "omega0_" + cfg.which, bundle, cfg.which != "power");

  // numeric evaluation when exponents were supplied
  const bool have_exponents =
      cfg.which == "power" ? !cfg.exp_l.empty() : (!cfg.exp_a.empty() && !cfg.exp_b.empty());
  if (have_exponents) {
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(cfg.precision);
    BigReal a(prec), l(prec);
    if (cfg.which == "power") {
      l = BigReal::parse(cfg.exp_l, prec);
      a = l;  // unused family
    } else {
      a = BigReal::parse(cfg.exp_a, prec);
      l = a + BigReal::parse(cfg.exp_b, prec);
    }
    if (l == BigReal::of(25L, prec)) throw ConfigError("l = a+b = 25 is excluded");
    const BigReal omega = BigReal::of(1L, prec);
    rep.add_info("omega0_values",
                 Json{{"printed", value_json(bundle.printed.value(omega, a, l))},
                      {"recomputed", value_json(bundle.recomputed.value(omega, a, l))}});
  }
}

// demo setup shared by the exact and float paths
struct StabilityDemo {
  ParsedControl control;
  Rat eps;
  Rat kappa;        // in (0,1)
  RationalPoly f;   // x^25 + eps*x^l
  RationalPoly g;   // x^25
};

StabilityDemo prepare_stability_demo(const RunConfig& cfg) {
  StabilityDemo demo;
  demo.control = parse_control_spec(cfg.control);
  const bool product_like = demo.control.kind != ControlFunction<Rat>::Kind::PowerSum;
  // a product control cannot dominate a d-only defect at c=0, so its honest
  // demonstration is the exact solution itself
  demo.eps = cfg.eps.empty() ? (product_like ? Rat(0) : Rat(1))
                             : parse_rat_or(cfg.eps, "eps");
  if (demo.control.l < 0 || demo.control.a < 0 || demo.control.b < 0)
    throw ConfigError("control exponents must be nonnegative");
  if (demo.control.l == 25)
    throw ConfigError("l != 25 required (l = a+b for product/mixed)");
  if (cfg.q != 1 && cfg.q != -1) throw ConfigError("q must be 1 or -1");
  if (cfg.iterations < 1) throw ConfigError("iterations must be >= 1");

  if (cfg.kappa.empty()) {
    try {
      demo.kappa = kappa_for_power(demo.control.l, cfg.q);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else {
    demo.kappa = parse_rat_or(cfg.kappa, "kappa");
    if (!(demo.kappa > 0 && demo.kappa < 1))
      throw ConfigError("kappa must lie in (0,1)");
  }
  demo.f = RationalPoly{{{Rat(1), 25}, {demo.eps, static_cast<int>(demo.control.l)}}};
  if (demo.eps == 0) demo.f = RationalPoly{{{Rat(1), 25}}};
  demo.g = RationalPoly{{{Rat(1), 25}}};
  return demo;
}

template <class T>
ControlFunction<T> make_control(const ParsedControl& pc, const T& omega, const T& like) {
  using Ops = ScalarOps<T>;
  switch (pc.kind) {
    case ControlFunction<Rat>::Kind::PowerSum:
      return ControlFunction<T>::power_sum(omega, Ops::from_long(pc.l, like));
    case ControlFunction<Rat>::Kind::PowerProduct:
      return ControlFunction<T>::power_product(omega, Ops::from_long(pc.a, like),
                                               Ops::from_long(pc.b, like));
    case ControlFunction<Rat>::Kind::Mixed:
      return ControlFunction<T>::mixed(omega, Ops::from_long(pc.a, like),
                                       Ops::from_long(pc.b, like));
    default:
      throw std::logic_error("unreachable");
  }
}

template <class T>
void run_stability_mode(const RunConfig& cfg, const StabilityDemo& demo,
                        ReportDocument& rep, const T& like) {
  using Ops = ScalarOps<T>;
  const EquationFamily fam = EquationFamily::of_degree(25);

  SampleRng rng(cfg.seed);
  std::vector<Rat> sample_rats;
  for (long i = 0; i < cfg.samples; ++i)
    sample_rats.push_back(rng.rational_in(Rat(-cfg.range), Rat(cfg.range)));

  std::vector<T> samples;
  samples.reserve(sample_rats.size());
  for (const auto& r : sample_rats) samples.push_back(Ops::from_rat(r, like));

  // omega from the defect of the demo perturbation
  std::vector<std::pair<T, T>> pairs;
  for (std::size_t i = 0; i + 1 < samples.size(); i += 2)
    pairs.emplace_back(samples[i], samples[i + 1]);
  for (const auto& s : samples) pairs.emplace_back(Ops::from_long(0, like), s);
  const auto omega_der = derive_power_sum_omega<T>(
      fam, Ops::from_rat(demo.eps, like), Ops::from_long(demo.control.l, like), pairs);
  rep.add_info("omega_derivation",
               Json{{"closed_form", value_json(omega_der.closed_form)},
                    {"grid_max", value_json(omega_der.grid_max)},
                    {"chosen", value_json(omega_der.chosen())}});

  const T omega = demo.eps == 0 ? Ops::from_long(1, like) : omega_der.chosen();
  const auto control = make_control<T>(demo.control, omega, like);

  StabilityConfig<T> sc;
  sc.q = cfg.q;
  sc.kappa = Ops::from_rat(demo.kappa, like);
  sc.iterations = cfg.iterations;
  sc.tolerance = Ops::exact
                     ? Ops::from_long(0, like)
                     : Ops::mul_pow2(Ops::from_long(1, like),
                                     -static_cast<long>(cfg.precision) / 2);
  sc.noise_floor = Ops::exact ? Ops::from_long(0, like)
                              : Ops::mul_pow2(Ops::from_long(1, like),
                                              -static_cast<long>(cfg.precision) / 2);
  sc.samples = samples;

  const auto defect_rows = check_doubling_defect<T>(demo.f, control, samples);
  bool defect_ok = true;
  Json drows = Json::array();
  for (const auto& r : defect_rows) {
    defect_ok = defect_ok && r.ok;
    drows.push_back(Json{{"c", value_json(r.c)},
                         {"defect", value_json(r.defect)},
                         {"sigma_star", value_json(r.bound)},
                         {"ok", r.ok}});
  }
  rep.add_pass("doubling_defect", Json{{"rows", std::move(drows)}}, defect_ok);

  const auto cert = certify_stability<T>(demo.f, control, sc);
  bool ratio_ok = true, bound_ok = true, doubling_ok = true;
  Json crows = Json::array();
  for (const auto& r : cert.rows) {
    ratio_ok = ratio_ok && r.ratio_ok;
    bound_ok = bound_ok && r.bound_ok;
    doubling_ok = doubling_ok && r.doubling_ok;
    Json row = Json{{"c", value_json(r.c)},
                    {"sigma_star", value_json(r.sigma_star_value)},
                    {"v_final", value_json(r.v_final)},
                    {"bound_rhs", value_json(r.bound_rhs)},
                    {"observed", value_json(r.observed)},
                    {"ratio_ok", r.ratio_ok},
                    {"bound_ok", r.bound_ok},
                    {"doubling_ok", r.doubling_ok}};
    if (r.max_ratio) row["max_ratio"] = value_json(*r.max_ratio);
    crows.push_back(std::move(row));
  }
  rep.add_pass("cauchy_ratio",
               Json{{"kappa", value_json(sc.kappa)}, {"kappa_loose", cert.kappa_loose}},
               ratio_ok);
  rep.add_pass("stability_bound",
               Json{{"max_violation", value_json(cert.max_violation)},
                    {"rows", std::move(crows)}},
               bound_ok);
  // the fixed point doubles with exponent 25; the published statement of the
  // theorem prints 23 at this spot, recorded once per run
  rep.add_pass("iterate_doubling", Json{{"exponent_used", 25}}, doubling_ok);
  rep.errata.push_back(Json{{"equation", "(theorem)"},
                            {"index", -1},
                            {"verdict", "printed_exponent_anomaly"},
                            {"computed", "25"},
                            {"printed", "23"},
                            {"note", "doubling exponent of the limit mapping; every "
                                     "other occurrence in the statement uses 25"}});

  // the limit mapping solves the equation: H(V_K)(u,v) = 2^(-25K) Hf(2^K u, 2^K v)
  // must be dominated by kappa^K sigma(u,v) on sampled pairs
  {
    const EquationFamily fam25 = EquationFamily::of_degree(25);
    const T kappa_k = Ops::pow_int(sc.kappa, sc.iterations);
    bool residual_ok = true;
    Json hrows = Json::array();
    auto v_final_fn = [&](const T& x) {
      return Ops::mul_pow2(demo.f(Ops::mul_pow2(x, sc.iterations * cfg.q)),
                           -25L * sc.iterations * cfg.q);
    };
    for (std::size_t i = 0; i + 1 < samples.size() && i < 10; i += 2) {
      const T& u = samples[i];
      const T& v = samples[i + 1];
      T hv = Ops::from_long(0, like);
      T rounding = Ops::from_long(0, like);  // noise floor of the evaluation
      if constexpr (std::is_same_v<T, BigReal>) {
        const auto cond = eval_h_conditioned(fam25, v_final_fn, u, v);
        hv = cond.value.abs();
        rounding = sc.tolerance * (Ops::from_long(1, like) + cond.term_magnitude);
      } else {
        hv = abs_of(eval_h(fam25, v_final_fn, u, v));
      }
      const T limit = kappa_k * control(u, v) + rounding;
      const bool ok = hv <= limit;
      residual_ok = residual_ok && ok;
      hrows.push_back(Json{{"u", value_json(u)},
                           {"v", value_json(v)},
                           {"h_of_iterate", value_json(hv)},
                           {"allowed", value_json(limit)},
                           {"ok", ok}});
    }
    rep.add_pass("fixed_point_operator_residual", Json{{"rows", std::move(hrows)}},
                 residual_ok);
  }

  const auto con = contraction_check<T>(demo.f, demo.g, control, cfg.q, sc.kappa,
                                        samples, sc.tolerance);
  Json cj = Json{{"non_dominated_samples", con.non_dominated}};
  if (con.nu) cj["nu"] = value_json(*con.nu);
  rep.add_pass("contraction", std::move(cj), con.pass);

  // the matrix-normed form of the bound, for both shipped norms
  bool matrix_ok = true;
  Json mrows = Json::array();
  for (int n = 1; n <= cfg.matrix_n; ++n) {
    auto X = MatrixOfPoints<T>::zero(n, sc.kappa);
    for (auto& e : X.entries)
      e = Ops::from_rat(rng.rational_in(Rat(-cfg.range), Rat(cfg.range)), like);
    for (const auto kind :
         {MatrixNormKind::EntrywiseMax, MatrixNormKind::EntrywiseSum}) {
      const auto row = matrix_bound_check<T>(demo.f, demo.g, control, kind, X,
                                             sc.kappa, cfg.q, sc.tolerance);
      matrix_ok = matrix_ok && row.ok;
      mrows.push_back(Json{{"n", n},
                           {"norm", kind == MatrixNormKind::EntrywiseMax ? "max" : "sum"},
                           {"lhs", value_json(row.lhs)},
                           {"rhs", value_json(row.rhs)},
                           {"ok", row.ok}});
    }
  }
  rep.add_pass("matrix_bound", Json{{"rows", std::move(mrows)}}, matrix_ok);
}

void run_stability(const RunConfig& cfg, ReportDocument& rep) {
  if (cfg.constants_only) {
    run_constants_only(cfg, rep);
    return;
  }
  const StabilityDemo demo = prepare_stability_demo(cfg);
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  if (cfg.matrix_n < 1 || cfg.matrix_n > kMaxMatrixSize)
    throw ConfigError("matrix n out of range");
  if (cfg.mode == "exact") {
    run_stability_mode<Rat>(cfg, demo, rep, Rat(0));
  } else if (cfg.mode == "bigreal") {
    run_stability_mode<BigReal>(cfg, demo, rep,
                                BigReal(static_cast<mpfr_prec_t>(cfg.precision)));
  } else {
    throw ConfigError("mode must be exact or bigreal");
  }
}

// ---------------------------------------------------------------------------
// fuzzy
// ---------------------------------------------------------------------------

void run_fuzzy(const RunConfig& cfg, ReportDocument& rep) {
  Int p;
  try {
    p = int_from_string(cfg.prime);
  } catch (const std::invalid_argument&) {
    throw ConfigError("invalid prime '" + cfg.prime + "'");
  }
  if (!is_prime(p)) throw ConfigError("p = " + cfg.prime + " is not prime");
  const PAdicContext field = PAdicContext::of(p);
  if (cfg.q != 1 && cfg.q != -1) throw ConfigError("q must be 1 or -1");
  if (cfg.matrix_n < 1 || cfg.matrix_n > kMaxMatrixSize)
    throw ConfigError("matrix n out of range");

  // kappa: scaling-exact default for the shipped sigma(c,d) = |d|_p^2
  const Rat two25 = rat_pow2(25);
  Rat kappa;
  if (cfg.kappa.empty()) {
    const Rat inv_abs2 = Rat(1) / field.abs(Rat(2));  // 1 for odd p, 2 for p = 2
    kappa = cfg.q == 1 ? inv_abs2 * inv_abs2 : two25 * Rat(2);
  } else {
    kappa = parse_rat_or(cfg.kappa, "kappa");
  }
  if (kappa == two25) throw ConfigError("kappa = 2^25 is excluded");
  if (cfg.q == 1 && kappa >= two25) throw ConfigError("q = 1 requires kappa < 2^25");
  if (cfg.q == -1 && kappa <= two25) throw ConfigError("q = -1 requires kappa > 2^25");

  const EquationFamily fam = EquationFamily::of_degree(25);
  RationalPoly f;
  try {
    f = RationalPoly::parse(cfg.function, fam.degree);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const RationalPoly v_exact{{{Rat(1), 25}}};

  const FuzzyMembership norm = standard_fuzzy_norm(field);
  const FuzzyMembership nprime = standard_fuzzy_norm(field);
  const FuzzyControl sigma = [field](const Rat& /*c*/, const Rat& d) -> Rat {
    const Rat a = field.abs(d);
    return Rat(a * a);
  };

  SampleRng rng(cfg.seed);
  std::vector<Rat> xs, ts;
  for (int i = 0; i < 20; ++i) xs.push_back(rng.rational());
  for (int i = 0; i < 20; ++i) ts.push_back(rat_abs(rng.nonzero_rational()));

  const auto axioms = fuzzy_axiom_check(norm, field, xs, ts);
  rep.add_pass("fuzzy_axioms",
               Json{{"monotone_in_t", axioms.monotone_in_t},
                    {"zero_is_one", axioms.zero_is_one},
                    {"scaling", axioms.scaling_ok},
                    {"strong_triangle", axioms.strong_triangle_ok},
                    {"limit_to_one", axioms.limit_to_one_ok}},
               axioms.all_ok());

  // Gamma time scales: for p > 25 every scale is exactly 1
  const auto scales = gamma_time_scales(field);
  Json scale_json = Json::array();
  bool all_one = true;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    scale_json.push_back(Json{{"divisor", gamma_entries()[i].divisor},
                              {"scale", value_json(scales[i])}});
    all_one = all_one && scales[i] == 1;
  }
  if (p > 25) {
    rep.add_pass("gamma_time_scales",
                 Json{{"all_equal_t", all_one}, {"rows", std::move(scale_json)}}, all_one);
  } else {
    rep.add_info("gamma_time_scales",
                 Json{{"all_equal_t", all_one},
                      {"factorial_abs", value_json(field.abs(Rat(factorial(25))))},
                      {"rows", std::move(scale_json)}});
  }

  // Gamma monotonicity in t on the grid
  bool gamma_monotone = true;
  for (const auto& x : xs) {
    for (const auto& t : ts) {
      if (gamma_value(nprime, sigma, x, Rat(2) * t, field) <
          gamma_value(nprime, sigma, x, t, field))
        gamma_monotone = false;
    }
  }
  rep.add_pass("gamma_monotone", Json::object(), gamma_monotone);

  // (G4) with the shipped sigma and the scaling-exact kappa
  std::vector<std::pair<Rat, Rat>> cd_pairs;
  for (int i = 0; i < 15; ++i) cd_pairs.emplace_back(rng.rational(), rng.rational());
  const auto g4 = check_g4(sigma, nprime, kappa, cfg.q, cd_pairs, ts);
  bool g4_ok = true;
  for (const auto& r : g4) g4_ok = g4_ok && r.ok;
  rep.add_pass("g4_scaling",
               Json{{"kappa", value_json(kappa)},
                    {"rows", g4.size()},
                    {"reading", "N'(sigma(2^q c, 2^q d), t) >= N'(sigma(c,d), "
                                "kappa^-q t); the published display omits the "
                                "left-hand time argument"}},
               g4_ok);

  // fixed point in the p-adic carrier
  const Rat c0 = Rat(1);
  const auto iterates = fuzzy_fixed_point(f, cfg.q, cfg.iterations, c0);
  Json it_json = Json::array();
  for (const auto& it : iterates) it_json.push_back(value_json(it));
  rep.add_info("fuzzy_fixed_point", Json{{"c", value_json(c0)}, {"iterates", it_json}});

  // (G6): scalar and matrix forms against the exact solution
  MatrixOfPoints<Rat> X = MatrixOfPoints<Rat>::zero(cfg.matrix_n, Rat(0));
  for (auto& e : X.entries) e = rng.rational();
  const auto g6 = check_g6(f, v_exact, sigma, norm, nprime, kappa, field, xs, ts, X);
  bool lhs_all_one = true;
  for (const auto& r : g6.scalar_rows) lhs_all_one = lhs_all_one && r.lhs == 1;
  rep.add_pass("g6_bound",
               Json{{"scalar_rows", g6.scalar_rows.size()},
                    {"matrix_rows", g6.matrix_rows.size()},
                    {"scalar_lhs_identically_one", lhs_all_one}},
               g6.all_ok());

  // min-lift on seeded matrices
  bool minlift_ok = true;
  long checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    MatrixOfPoints<Rat> M = MatrixOfPoints<Rat>::zero(cfg.matrix_n, Rat(0));
    for (auto& e : M.entries) e = rng.rational();
    const auto ml = fuzzy_minlift_check(norm, M, ts);
    minlift_ok = minlift_ok && ml.all_ok();
    ++checked;
  }
  rep.add_pass("min_lift", Json{{"matrices", checked}}, minlift_ok);
}

}  // namespace

ReportDocument run_command(const RunConfig& cfg) {
  ReportDocument rep;
  rep.command = cfg.command;
  rep.config = config_echo(cfg);
  if (cfg.command == "verify")
    run_verify(cfg, rep);
  else if (cfg.command == "replay")
    run_replay(cfg, rep);
  else if (cfg.command == "stability")
    run_stability(cfg, rep);
  else if (cfg.command == "fuzzy")
    run_fuzzy(cfg, rep);
  else
    throw ConfigError("unknown command '" + cfg.command + "'");
  return rep;
}

int exit_code_for(const ReportDocument& report) { return report.all_passed() ? 0 : 1; }

}  // namespace qveq
