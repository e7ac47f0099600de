#pragma once

#include <json.hpp>
#include <string>

#include "tcv/characters.hpp"
#include "tcv/forms.hpp"
#include "tcv/surface.hpp"
#include "tcv/trace_map.hpp"
#include "tcv/types.hpp"

namespace tcv {

// Insertion-ordered JSON: key order in emitted documents is deterministic.
using Json = nlohmann::ordered_json;

// Canonical serialization: doubles via "%.17g" (exact round trip, stable
// bytes), integers as integers, insertion-ordered keys.  `pretty` adds
// two-space indentation.  Output does not end with a newline.
std::string dump_canonical(const Json& j, bool pretty);

// complex <-> [re, im]
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j, const char* what);

Json traces_to_json(const Traces4& t);
Traces4 traces_from_json(const Json& j, const char* what);

Json params_to_json(const CubicParams& c);
CubicParams params_from_json(const Json& j, const char* what);

Json point_to_json(const CharacterPoint& pt);
CharacterPoint point_from_json(const Json& j, const char* what);

Json vector3_to_json(const Vector3c& v);
Json vector4_to_json(const Vector4c& v);
Vector4c vector4_from_json(const Json& j, const char* what);

Json matrix2_to_json(const Matrix2c& M);
Matrix2c matrix2_from_json(const Json& j, const char* what);

// {"exponents": [[i,j,k], ...], "coeffs": [[re,im], ...]}; zero terms omitted
// on output, duplicate exponents rejected on input.
Json trivariate_to_json(const Trivariate& f);
Trivariate trivariate_from_json(const Json& j, const char* what);

// Same layout with quadruple exponents; terms must be homogeneous of the
// declared total degree 3.
Json quaternary_to_json(const QuaternaryForm& S);
QuaternaryForm quaternary_from_json(const Json& j, const char* what);

Json affine_change_to_json(const AffineChange& g);

}  // namespace tcv
