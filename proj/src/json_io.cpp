#include "tcv/json_io.hpp"

#include <cstdio>

namespace tcv {

namespace {

void append_double(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void dump_rec(const Json& j, std::string& out, bool pretty, int depth) {
  const std::string pad = pretty ? std::string(2 * (depth + 1), ' ') : "";
  const std::string padc = pretty ? std::string(2 * depth, ' ') : "";
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      append_double(out, j.get<double>());
      break;
    case Json::value_t::string:
      out += Json(j.get<std::string>()).dump();  // reuse the escaping rules
      break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      bool firstel = true;
      for (const auto& el : j) {
        if (!firstel) out += ',';
        if (pretty) {
          out += '\n';
          out += pad;
        }
        dump_rec(el, out, pretty, depth + 1);
        firstel = false;
      }
      if (pretty) {
        out += '\n';
        out += padc;
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool firstel = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!firstel) out += ',';
        if (pretty) {
          out += '\n';
          out += pad;
        }
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_rec(it.value(), out, pretty, depth + 1);
        firstel = false;
      }
      if (pretty) {
        out += '\n';
        out += padc;
      }
      out += '}';
      break;
    }
    default:
      throw std::invalid_argument("dump_canonical: unsupported JSON value type");
  }
}

[[noreturn]] void bad(const char* what, const std::string& detail) {
  throw std::invalid_argument(std::string(what) + ": " + detail);
}

double number_from(const Json& j, const char* what) {
  if (j.is_number_integer()) return static_cast<double>(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return static_cast<double>(j.get<std::uint64_t>());
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!is_finite(v)) bad(what, "non-finite number");
    return v;
  }
  bad(what, "expected a number");
}

}  // namespace

std::string dump_canonical(const Json& j, bool pretty) {
  std::string out;
  dump_rec(j, out, pretty, 0);
  return out;
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const char* what) {
  if (j.is_number()) return Complex(number_from(j, what), 0.0);  // bare real
  if (!j.is_array() || j.size() != 2) bad(what, "expected [re, im] or a real number");
  return Complex(number_from(j[0], what), number_from(j[1], what));
}

namespace {

template <typename T>
T tuple4_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) bad(what, "expected an array of 4 complex numbers");
  T t;
  for (int i = 0; i < 4; ++i) t[i] = complex_from_json(j[i], what);
  return t;
}

}  // namespace

Json traces_to_json(const Traces4& t) {
  Json a = Json::array();
  for (int i = 0; i < 4; ++i) a.push_back(complex_to_json(t[i]));
  return a;
}
Traces4 traces_from_json(const Json& j, const char* what) {
  return tuple4_from_json<Traces4>(j, what);
}

Json params_to_json(const CubicParams& c) {
  Json a = Json::array();
  for (int i = 0; i < 4; ++i) a.push_back(complex_to_json(c[i]));
  return a;
}
CubicParams params_from_json(const Json& j, const char* what) {
  return tuple4_from_json<CubicParams>(j, what);
}

Json point_to_json(const CharacterPoint& pt) {
  return Json::array(
      {complex_to_json(pt.x), complex_to_json(pt.y), complex_to_json(pt.z)});
}
CharacterPoint point_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) bad(what, "expected an array of 3 complex numbers");
  CharacterPoint pt;
  for (int i = 0; i < 3; ++i) pt[i] = complex_from_json(j[i], what);
  return pt;
}

Json vector3_to_json(const Vector3c& v) {
  Json a = Json::array();
  for (int i = 0; i < 3; ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

Json vector4_to_json(const Vector4c& v) {
  Json a = Json::array();
  for (int i = 0; i < 4; ++i) a.push_back(complex_to_json(v(i)));
  return a;
}
Vector4c vector4_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) bad(what, "expected an array of 4 complex numbers");
  Vector4c v;
  for (int i = 0; i < 4; ++i) v(i) = complex_from_json(j[i], what);
  return v;
}

Json matrix2_to_json(const Matrix2c& M) {
  Json rows = Json::array();
  for (int i = 0; i < 2; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 2; ++j) row.push_back(complex_to_json(M(i, j)));
    rows.push_back(row);
  }
  return rows;
}
Matrix2c matrix2_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) bad(what, "expected a 2x2 matrix (two rows)");
  Matrix2c M;
  for (int i = 0; i < 2; ++i) {
    if (!j[i].is_array() || j[i].size() != 2) bad(what, "expected rows of length 2");
    for (int k = 0; k < 2; ++k) M(i, k) = complex_from_json(j[i][k], what);
  }
  return M;
}

Json trivariate_to_json(const Trivariate& f) {
  Json exps = Json::array();
  Json coeffs = Json::array();
  const auto& table = Trivariate::exponent_table();
  for (int n = 0; n < Trivariate::kTerms; ++n) {
    if (f[n] == Complex(0, 0)) continue;
    exps.push_back(Json::array({table[n][0], table[n][1], table[n][2]}));
    coeffs.push_back(complex_to_json(f[n]));
  }
  Json out = Json::object();
  out["exponents"] = exps;
  out["coeffs"] = coeffs;
  return out;
}

Trivariate trivariate_from_json(const Json& j, const char* what) {
  if (!j.is_object() || !j.contains("exponents") || !j.contains("coeffs"))
    bad(what, "expected {\"exponents\": [...], \"coeffs\": [...]}");
  const Json& exps = j["exponents"];
  const Json& coeffs = j["coeffs"];
  if (!exps.is_array() || !coeffs.is_array() || exps.size() != coeffs.size())
    bad(what, "exponents and coeffs must be arrays of equal length");
  Trivariate f;
  std::array<bool, Trivariate::kTerms> seen{};
  for (size_t n = 0; n < exps.size(); ++n) {
    const Json& e = exps[n];
    if (!e.is_array() || e.size() != 3) bad(what, "each exponent must be [i, j, k]");
    int ijk[3];
    for (int m = 0; m < 3; ++m) {
      if (!e[m].is_number_integer() && !e[m].is_number_unsigned())
        bad(what, "exponents must be integers");
      ijk[m] = e[m].get<int>();
      if (ijk[m] < 0 || ijk[m] > 3) bad(what, "exponents must lie in 0..3");
    }
    if (ijk[0] + ijk[1] + ijk[2] > 3) bad(what, "total degree exceeds 3");
    const int idx = Trivariate::index(ijk[0], ijk[1], ijk[2]);
    if (seen[idx]) bad(what, "duplicate exponent triple");
    seen[idx] = true;
    f[idx] = complex_from_json(coeffs[n], what);
  }
  return f;
}

Json quaternary_to_json(const QuaternaryForm& S) {
  Json exps = Json::array();
  Json coeffs = Json::array();
  const auto& table = S.exponents();
  for (int n = 0; n < S.terms(); ++n) {
    if (S[n] == Complex(0, 0)) continue;
    exps.push_back(Json::array({table[n][0], table[n][1], table[n][2], table[n][3]}));
    coeffs.push_back(complex_to_json(S[n]));
  }
  Json out = Json::object();
  out["exponents"] = exps;
  out["coeffs"] = coeffs;
  return out;
}

QuaternaryForm quaternary_from_json(const Json& j, const char* what) {
  if (!j.is_object() || !j.contains("exponents") || !j.contains("coeffs"))
    bad(what, "expected {\"exponents\": [...], \"coeffs\": [...]}");
  const Json& exps = j["exponents"];
  const Json& coeffs = j["coeffs"];
  if (!exps.is_array() || !coeffs.is_array() || exps.size() != coeffs.size())
    bad(what, "exponents and coeffs must be arrays of equal length");
  QuaternaryForm S(3);
  for (size_t n = 0; n < exps.size(); ++n) {
    const Json& e = exps[n];
    if (!e.is_array() || e.size() != 4) bad(what, "each exponent must be [e0, e1, e2, e3]");
    int ev[4];
    int total = 0;
    for (int m = 0; m < 4; ++m) {
      if (!e[m].is_number_integer() && !e[m].is_number_unsigned())
        bad(what, "exponents must be integers");
      ev[m] = e[m].get<int>();
      if (ev[m] < 0) bad(what, "exponents must be nonnegative");
      total += ev[m];
    }
    if (total != 3) bad(what, "terms must be homogeneous of degree 3");
    Complex& slot = S.coeff(ev[0], ev[1], ev[2], ev[3]);
    if (slot != Complex(0, 0)) bad(what, "duplicate exponent quadruple");
    slot = complex_from_json(coeffs[n], what);
  }
  return S;
}

Json affine_change_to_json(const AffineChange& g) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) row.push_back(complex_to_json(g.linear(i, j)));
    rows.push_back(row);
  }
  Json out = Json::object();
  out["linear"] = rows;
  out["translation"] = vector3_to_json(g.translation);
  out["divisor"] = complex_to_json(g.divisor);
  return out;
}

}  // namespace tcv
