#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcv/cli.hpp"

namespace {

// Subcommands that run without an input document unless one is piped in.
bool optional_input(const std::string& name) { return name == "selftest"; }

int emit_error(const std::string& message, bool pretty, std::ostream& os) {
  tcv::Json env = tcv::Json::object();
  env["schema"] = tcv::kSchemaId;
  env["error_kind"] = "invalid-input";
  env["message"] = message;
  os << tcv::dump_canonical(env, pretty) << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Affine cubic surfaces x^2+y^2+z^2+xyz = px+qy+rz+s and the boundary-trace\n"
      "map of the four-holed sphere / one-holed torus: forward map, fibers,\n"
      "normal forms, tritangent checks, and explicit representations.\n"
      "Subcommands read one JSON document (--input PATH or stdin) and write one\n"
      "JSON document to --output PATH or stdout."};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  double tol = 1e-9;
  bool pretty = false;
  std::string input = "-";
  std::string output = "-";
  app.add_option("--seed", seed, "Seed for all randomized internals")->capture_default_str();
  app.add_option("--tol", tol, "Residual tolerance (eps_residual); dedup tolerance stays 1e-7")
      ->capture_default_str();
  app.add_flag("--pretty", pretty, "Indent the JSON output");
  app.add_option("--input", input, "Input JSON document path, - for stdin")
      ->capture_default_str();
  app.add_option("--output", output, "Output path, - for stdout")->capture_default_str();

  static const std::map<std::string, std::string> descriptions = {
      {"phi", "Image (p,q,r,s) of boundary traces (a,b,c,d)"},
      {"jacobian", "Jacobian matrix and determinant of the trace map"},
      {"fiber", "All preimages of target parameters"},
      {"fiber-count", "Preimage count with Newton-multistart saturation"},
      {"classify-pqr", "Which family (if any) sends p = q = r to zero"},
      {"normalize", "Affine classification of a general cubic into the family"},
      {"tritangent", "Tritangent/Eckardt verdict for a plane section"},
      {"singular", "Singular points of the affine surface"},
      {"solve-z", "The two z-roots over a point (x, y)"},
      {"rep4", "Explicit four-holed-sphere representation"},
      {"torus-char", "Commutator trace at a torus character point"},
      {"torus-rep", "Explicit one-holed-torus representation"},
      {"delta", "Orbit under even sign changes of (p, q, r)"},
      {"torus-map", "Boundary trace of the torus leaf with parameter s"},
      {"sphere-min", "Minimum image magnitude over a trace sphere"},
      {"selftest", "Re-derive identities and frozen values; exit 2 on failure"},
  };

  std::string level = "quick";
  bool inject_error = false;
  for (const auto& name : tcv::subcommand_names()) {
    auto it = descriptions.find(name);
    CLI::App* sub =
        app.add_subcommand(name, it == descriptions.end() ? std::string() : it->second);
    sub->fallthrough();
    if (name == "selftest") {
      sub->add_option("level", level, "quick (default) or full")->capture_default_str();
      sub->add_flag("--inject-error", inject_error,
                    "Deliberately corrupt one identity (negative control)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // help/version exit 0; parse failures nonzero
  }

  const std::string name = app.get_subcommands().front()->get_name();

  tcv::Invocation inv;
  inv.subcommand = name;
  inv.seed = seed;
  inv.tol = tol;
  inv.pretty = pretty;

  const bool have_file = input != "-";
  std::string text;
  if (have_file) {
    std::ifstream fin(input);
    if (!fin) return emit_error("cannot open input file: " + input, pretty, std::cerr);
    std::ostringstream ss;
    ss << fin.rdbuf();
    text = ss.str();
  } else if (!optional_input(name)) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  }

  if (!text.empty()) {
    try {
      inv.input = tcv::Json::parse(text);
    } catch (const tcv::Json::exception& e) {
      return emit_error(std::string("JSON parse failure: ") + e.what(), pretty, std::cout);
    }
  } else {
    inv.input = tcv::Json::object();
  }
  if (name == "selftest") {
    if (!inv.input.contains("level")) inv.input["level"] = level;
    if (!inv.input.contains("inject_error")) inv.input["inject_error"] = inject_error;
  }

  const tcv::RunResult rr = tcv::run(inv);
  if (output == "-") {
    std::cout << rr.output;
  } else {
    std::ofstream fout(output);
    if (!fout) return emit_error("cannot open output file: " + output, pretty, std::cerr);
    fout << rr.output;
  }
  return rr.exit_code;
}
