#include "tcv/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "tcv/characters.hpp"
#include "tcv/rng.hpp"
#include "tcv/surface.hpp"
#include "tcv/trace_map.hpp"

namespace tcv {

namespace {

struct Ctx {
  std::uint64_t seed;
  Tolerance tol;
};

struct HandlerOut {
  Json result = Json::object();
  Json residuals = Json::object();
  std::vector<std::string> warnings;
  int exit_code = 0;
  std::string error_kind;  // set only with nonzero exit_code
};

const Json& field(const Json& in, const char* key) {
  if (!in.is_object() || !in.contains(key))
    throw std::invalid_argument(std::string("input: missing required key \"") + key + "\"");
  return in[key];
}

// fiber targets are accepted under "target" or "params" so that the output
// of `phi` can be piped back in unchanged
const Json& target_field(const Json& in) {
  if (in.is_object() && in.contains("target")) return in["target"];
  if (in.is_object() && in.contains("params")) return in["params"];
  throw std::invalid_argument("input: missing required key \"target\" (alias \"params\")");
}

int int_field(const Json& in, const char* key, int fallback, int lo, int hi) {
  if (!in.is_object() || !in.contains(key)) return fallback;
  const Json& j = in[key];
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw std::invalid_argument(std::string("input: \"") + key + "\" must be an integer");
  const std::int64_t v = j.get<std::int64_t>();
  if (v < lo || v > hi)
    throw std::invalid_argument(std::string("input: \"") + key + "\" out of range");
  return static_cast<int>(v);
}

HandlerOut do_phi(const Json& in, const Ctx&) {
  const Traces4 t = traces_from_json(field(in, "traces"), "traces");
  HandlerOut out;
  out.result["params"] = params_to_json(phi(t));
  const auto fr = factor_residuals(t);
  out.residuals["factor_identities_max"] = *std::max_element(fr.begin(), fr.end());
  return out;
}

HandlerOut do_jacobian(const Json& in, const Ctx&) {
  const Traces4 t = traces_from_json(field(in, "traces"), "traces");
  const Eigen::Matrix4cd J = phi_jacobian(t);
  HandlerOut out;
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back(complex_to_json(J(i, j)));
    rows.push_back(row);
  }
  out.result["matrix"] = rows;
  out.result["det"] = complex_to_json(phi_jacobian_det(t));
  return out;
}

HandlerOut do_fiber(const Json& in, const Ctx& ctx) {
  const CubicParams target = params_from_json(target_field(in), "target");
  const FiberSolution sol = fiber(target, ctx.tol, ctx.seed);
  HandlerOut out;
  Json pts = Json::array();
  for (const auto& t : sol.points) pts.push_back(traces_to_json(t));
  out.result["points"] = pts;
  out.result["count"] = static_cast<int>(sol.points.size());
  out.result["method"] =
      sol.method == FiberMethod::elimination ? "elimination" : "newton_oracle";
  Json res = Json::array();
  for (double r : sol.residuals) res.push_back(r);
  out.residuals["forward"] = res;
  return out;
}

HandlerOut do_fiber_count(const Json& in, const Ctx& ctx) {
  const CubicParams target = params_from_json(target_field(in), "target");
  const int trials = int_field(in, "trials", 500, 1, 1000000);
  const FiberCount fc = fiber_count(target, trials, ctx.seed, ctx.tol);
  HandlerOut out;
  out.result["count"] = fc.count;
  out.result["even"] = fc.even;
  out.result["saturated"] = fc.saturated;
  out.result["non_generic"] = fc.non_generic;
  Json pts = Json::array();
  for (const auto& t : fc.points) pts.push_back(traces_to_json(t));
  out.result["points"] = pts;
  return out;
}

HandlerOut do_classify_pqr(const Json& in, const Ctx& ctx) {
  const Traces4 t = traces_from_json(field(in, "traces"), "traces");
  const PqrZeroFamily fam = classify_pqr_zero(t, ctx.tol);
  HandlerOut out;
  switch (fam) {
    case PqrZeroFamily::all_zero_family:
      out.result["family"] = "all_zero_family";
      break;
    case PqrZeroFamily::antidiagonal_family:
      out.result["family"] = "antidiagonal_family";
      break;
    default:
      out.result["family"] = "none";
  }
  out.result["params"] = params_to_json(phi(t));
  return out;
}

HandlerOut do_normalize(const Json& in, const Ctx& ctx) {
  const Trivariate f = trivariate_from_json(field(in, "poly"), "poly");
  const auto [params, change] = normalize(f, ctx.tol);
  HandlerOut out;
  out.result["params"] = params_to_json(params);
  out.result["change"] = affine_change_to_json(change);
  const Trivariate diff = substitute(f, change) - normal_form_poly(params);
  out.residuals["verification"] = diff.max_abs();
  return out;
}

HandlerOut do_tritangent(const Json& in, const Ctx& ctx) {
  const QuaternaryForm S = quaternary_from_json(field(in, "form"), "form");
  const Vector4c P = vector4_from_json(field(in, "plane"), "plane");
  const TritangentReport rep = verify_tritangent(S, P, ctx.tol);
  HandlerOut out;
  switch (rep.kind) {
    case TritangentKind::generic:
      out.result["kind"] = "generic";
      break;
    case TritangentKind::eckardt:
      out.result["kind"] = "eckardt";
      break;
    case TritangentKind::touches_singularity:
      out.result["kind"] = "touches_singularity";
      break;
    default:
      out.result["kind"] = "not_tritangent";
  }
  Json lines = Json::array();
  for (const auto& ln : rep.lines)
    lines.push_back(Json::array({vector4_to_json(ln[0]), vector4_to_json(ln[1])}));
  out.result["lines"] = lines;
  out.result["eckardt_point"] =
      rep.eckardt_point ? vector4_to_json(*rep.eckardt_point) : Json();
  out.residuals["factorization"] = rep.factor_residual;
  return out;
}

HandlerOut do_singular(const Json& in, const Ctx& ctx) {
  const CubicParams params = params_from_json(field(in, "params"), "params");
  const auto pts = singular_points(params, ctx.tol);
  HandlerOut out;
  Json arr = Json::array();
  for (const auto& sp : pts) {
    Json rec = Json::object();
    rec["location"] = vector3_to_json(sp.location);
    rec["gradient_residual"] = sp.gradient_residual;
    rec["surface_residual"] = sp.surface_residual;
    rec["hessian_rank"] = sp.hessian_rank;
    arr.push_back(rec);
  }
  out.result["points"] = arr;
  out.result["count"] = static_cast<int>(pts.size());
  return out;
}

HandlerOut do_solve_z(const Json& in, const Ctx&) {
  const CubicParams params = params_from_json(field(in, "params"), "params");
  const Complex x = complex_from_json(field(in, "x"), "x");
  const Complex y = complex_from_json(field(in, "y"), "y");
  const auto zs = solve_for_z(params, x, y);
  HandlerOut out;
  out.result["z"] = Json::array({complex_to_json(zs[0]), complex_to_json(zs[1])});
  out.residuals["on_surface"] =
      Json::array({on_surface(params, Vector3c(x, y, zs[0])),
                   on_surface(params, Vector3c(x, y, zs[1]))});
  return out;
}

HandlerOut do_rep4(const Json& in, const Ctx& ctx) {
  const Traces4 t = traces_from_json(field(in, "traces"), "traces");
  const CharacterPoint pt = point_from_json(field(in, "point"), "point");
  const FourHoledSphereRep rep = build_rep_4holed(t, pt, ctx.tol);
  HandlerOut out;
  out.result["A"] = matrix2_to_json(rep.A);
  out.result["B"] = matrix2_to_json(rep.B);
  out.result["C"] = matrix2_to_json(rep.C);
  out.result["D"] = matrix2_to_json(rep.D);
  const Matrix2c prod = rep.A * rep.B * rep.C * rep.D;
  out.residuals["boundary_relation"] =
      (prod - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  const TracesAndPoint round = traces_of_rep(rep);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(round.traces[i] - t[i]));
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(round.point[i] - pt[i]));
  out.residuals["trace_roundtrip"] = worst;
  return out;
}

HandlerOut do_torus_char(const Json& in, const Ctx&) {
  const CharacterPoint pt = point_from_json(field(in, "point"), "point");
  HandlerOut out;
  out.result["kappa"] = complex_to_json(torus_char(pt));
  return out;
}

HandlerOut do_torus_rep(const Json& in, const Ctx& ctx) {
  const CharacterPoint pt = point_from_json(field(in, "point"), "point");
  const TorusRep rep = build_rep_torus(pt, ctx.tol);
  HandlerOut out;
  out.result["A"] = matrix2_to_json(rep.A);
  out.result["B"] = matrix2_to_json(rep.B);
  const Matrix2c comm =
      rep.A * rep.B * rep.A.inverse() * rep.B.inverse();
  out.result["commutator_trace"] = complex_to_json(tr2(comm));
  out.residuals["char_match"] = std::abs(tr2(comm) - torus_char(pt));
  return out;
}

HandlerOut do_delta(const Json& in, const Ctx& ctx) {
  const CubicParams params = params_from_json(field(in, "params"), "params");
  const DeltaOrbit orb = delta_orbit(params, ctx.tol);
  HandlerOut out;
  out.result["is_invariant"] = orb.is_invariant;
  Json arr = Json::array();
  for (const auto& c : orb.orbit) arr.push_back(params_to_json(c));
  out.result["orbit"] = arr;
  out.result["size"] = static_cast<int>(orb.orbit.size());
  return out;
}

HandlerOut do_torus_map(const Json& in, const Ctx&) {
  const Complex s = complex_from_json(field(in, "s"), "s");
  const TorusCorrespondence tc = torus_correspondence(s);
  HandlerOut out;
  out.result["kappa"] = complex_to_json(tc.kappa);
  out.result["kappa_alternate_convention"] = complex_to_json(tc.kappa_alternate);
  out.warnings.push_back(
      "boundary-trace conventions differ across sources: kappa = s - 2 is the "
      "constructive value verified by building representations; s + 2 appears in "
      "some statements and is provided as kappa_alternate_convention");
  return out;
}

HandlerOut do_sphere_min(const Json& in, const Ctx& ctx) {
  if (!in.is_object() || !in.contains("radius"))
    throw std::invalid_argument("input: missing required key \"radius\"");
  const Json& rj = in["radius"];
  double radius;
  if (rj.is_number_integer() || rj.is_number_unsigned())
    radius = static_cast<double>(rj.get<std::int64_t>());
  else if (rj.is_number_float())
    radius = rj.get<double>();
  else
    throw std::invalid_argument("input: \"radius\" must be a number");
  const int samples = int_field(in, "samples", 200, 1, 10000000);
  HandlerOut out;
  out.result["min_image_max_modulus"] = min_image_on_sphere(radius, samples, ctx.seed);
  out.result["samples"] = samples;
  return out;
}

struct SelftestCheck {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  bool pass = false;
};

HandlerOut do_selftest(const Json& in, const Ctx& ctx) {
  std::string level = "quick";
  if (in.is_object() && in.contains("level")) {
    if (!in["level"].is_string())
      throw std::invalid_argument("input: \"level\" must be \"quick\" or \"full\"");
    level = in["level"].get<std::string>();
  }
  if (level != "quick" && level != "full")
    throw std::invalid_argument("input: \"level\" must be \"quick\" or \"full\"");
  bool inject = false;
  if (in.is_object() && in.contains("inject_error")) {
    if (!in["inject_error"].is_boolean())
      throw std::invalid_argument("input: \"inject_error\" must be a boolean");
    inject = in["inject_error"].get<bool>();
  }
  const int n = level == "quick" ? 100 : 100000;
  const double thr = ctx.tol.eps_residual;
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<SelftestCheck> checks;
  Rng rng = Rng(ctx.seed).fork(0x73656c66);  // stream tag: "self"

  // 1. defining equation of the image surface at random representations
  {
    SelftestCheck c{"hypersurface-identity", n, 0.0, false};
    const double flip = inject ? -1.0 : 1.0;
    for (int k = 0; k < n; ++k) {
      const Matrix2c A = random_unimodular(rng);
      const Matrix2c B = random_unimodular(rng);
      const Matrix2c C = random_unimodular(rng);
      const Matrix2c D = (A * B * C).inverse();
      const Complex a = tr2(A), b = tr2(B), cc = tr2(C), d = tr2(D);
      const Complex x = tr2(A * B), y = tr2(B * C), z = tr2(C * A);
      const CubicParams pr = phi({a, b, cc, d});
      const Complex lhs = x * x + y * y + z * z + flip * x * y * z;
      const Complex rhs = pr.p * x + pr.q * y + pr.r * z + pr.s;
      const double m = std::max({std::abs(x), std::abs(y), std::abs(z)});
      c.max_residual =
          std::max(c.max_residual, std::abs(lhs - rhs) / (1.0 + m * m * m));
    }
    c.pass = c.max_residual < thr;
    checks.push_back(c);
  }
  // 2. difference/sum factorizations of the image coordinates
  {
    SelftestCheck c{"factor-identities", n, 0.0, false};
    for (int k = 0; k < n; ++k) {
      Traces4 t;
      for (int i = 0; i < 4; ++i) t[i] = rng.uniform_box(3.0);
      const auto fr = factor_residuals(t);
      c.max_residual = std::max(c.max_residual, *std::max_element(fr.begin(), fr.end()));
    }
    c.pass = c.max_residual < thr;
    checks.push_back(c);
  }
  // 3. torus commutator-trace identity
  {
    SelftestCheck c{"torus-commutator", n, 0.0, false};
    for (int k = 0; k < n; ++k) {
      const Matrix2c A = random_unimodular(rng);
      const Matrix2c B = random_unimodular(rng);
      const Complex lhs = tr2(A * B * A.inverse() * B.inverse());
      const CharacterPoint pt{tr2(A), tr2(B), tr2(A * B)};
      const double m = pt.max_mod();
      c.max_residual =
          std::max(c.max_residual, std::abs(lhs - torus_char(pt)) / (1.0 + m * m * m));
    }
    c.pass = c.max_residual < thr;
    checks.push_back(c);
  }
  // 4. frozen reference values
  {
    SelftestCheck c{"frozen-values", 5, 0.0, false};
    auto record = [&](double r) { c.max_residual = std::max(c.max_residual, r); };
    {
      const CubicParams pr = phi({2, 2, 2, 2});
      const CubicParams want{8, 8, 8, -28};
      for (int i = 0; i < 4; ++i) record(std::abs(pr[i] - want[i]));
    }
    {
      const CubicParams pr = phi({0, 0, 0, 0});
      const CubicParams want{0, 0, 0, 4};
      for (int i = 0; i < 4; ++i) record(std::abs(pr[i] - want[i]));
    }
    record(std::abs(phi_jacobian_det({1, 1, 1, 0}) - Complex(4, 0)));
    record(std::abs(torus_char({2, 2, 2}) - Complex(2, 0)));
    record(std::abs(torus_char({0, 0, 0}) - Complex(-2, 0)));
    c.pass = c.max_residual < thr;
    checks.push_back(c);
  }
  // 5. fiber round trips on a few random tuples
  {
    const int m = level == "quick" ? 3 : 10;
    SelftestCheck c{"fiber-roundtrip", m, 0.0, false};
    bool ok = true;
    for (int k = 0; k < m; ++k) {
      Traces4 t;
      for (int i = 0; i < 4; ++i) t[i] = rng.uniform_box(2.0);
      const CubicParams target = phi(t);
      try {
        const FiberSolution sol = fiber(target, ctx.tol, ctx.seed + k);
        double best = 1e300;
        for (const auto& pt : sol.points) {
          double d = 0.0;
          for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(pt[i] - t[i]));
          best = std::min(best, d);
        }
        c.max_residual = std::max(c.max_residual, best);
      } catch (const DomainError&) {
        ok = false;
      }
    }
    c.pass = ok && c.max_residual < 1e-6;
    checks.push_back(c);
  }

  const auto t1 = std::chrono::steady_clock::now();
  HandlerOut out;
  bool all = true;
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json rec = Json::object();
    rec["name"] = c.name;
    rec["samples"] = c.samples;
    rec["max_residual"] = c.max_residual;
    rec["pass"] = c.pass;
    arr.push_back(rec);
    all = all && c.pass;
  }
  out.result["level"] = level;
  out.result["checks"] = arr;
  out.result["elapsed_seconds"] = std::chrono::duration<double>(t1 - t0).count();
  out.result["pass"] = all;
  if (!all) {
    out.exit_code = 2;
    out.error_kind = "selftest-failed";
    out.warnings.push_back("one or more self-test checks failed");
  }
  return out;
}

using Handler = std::function<HandlerOut(const Json&, const Ctx&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"phi", do_phi},
      {"jacobian", do_jacobian},
      {"fiber", do_fiber},
      {"fiber-count", do_fiber_count},
      {"classify-pqr", do_classify_pqr},
      {"normalize", do_normalize},
      {"tritangent", do_tritangent},
      {"singular", do_singular},
      {"solve-z", do_solve_z},
      {"rep4", do_rep4},
      {"torus-char", do_torus_char},
      {"torus-rep", do_torus_rep},
      {"delta", do_delta},
      {"torus-map", do_torus_map},
      {"sphere-min", do_sphere_min},
      {"selftest", do_selftest},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : handlers()) v.push_back(name);
    return v;
  }();
  return names;
}

RunResult run(const Invocation& inv) {
  Json env = Json::object();
  env["schema"] = kSchemaId;

  auto finish = [&](int code) {
    RunResult rr;
    rr.exit_code = code;
    rr.output = dump_canonical(env, inv.pretty) + "\n";
    return rr;
  };

  try {
    if (!(inv.tol > 0.0) || !is_finite(inv.tol))
      throw std::invalid_argument("tolerance must be a positive finite number");
    const auto it = handlers().find(inv.subcommand);
    if (it == handlers().end())
      throw std::invalid_argument("unknown subcommand \"" + inv.subcommand + "\"");
    Ctx ctx{inv.seed, Tolerance{inv.tol, Tolerance{}.eps_equal}};
    const HandlerOut h = it->second(inv.input, ctx);
    env["result"] = h.result;
    env["residuals"] = h.residuals;
    env["seed"] = inv.seed;
    env["tolerance"] = inv.tol;
    Json warn = Json::array();
    for (const auto& w : h.warnings) warn.push_back(w);
    env["warnings"] = warn;
    if (h.exit_code != 0 && !h.error_kind.empty()) env["error_kind"] = h.error_kind;
    return finish(h.exit_code);
  } catch (const DomainError& e) {
    env["error_kind"] = e.kind();
    env["message"] = e.what();
    if (const auto* se = dynamic_cast<const SingularSystemError*>(&e))
      env["rank"] = se->rank();
    env["seed"] = inv.seed;
    env["tolerance"] = inv.tol;
    return finish(2);
  } catch (const std::invalid_argument& e) {
    env["error_kind"] = "invalid-input";
    env["message"] = e.what();
    env["seed"] = inv.seed;
    env["tolerance"] = inv.tol;
    return finish(1);
  } catch (const Json::exception& e) {
    env["error_kind"] = "invalid-input";
    env["message"] = e.what();
    env["seed"] = inv.seed;
    env["tolerance"] = inv.tol;
    return finish(1);
  }
}

}  // namespace tcv
