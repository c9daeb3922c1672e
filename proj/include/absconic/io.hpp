#pragma once

#include "absconic/calibrate.hpp"
#include "absconic/scene.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace absconic::io {

using Json = nlohmann::ordered_json;

/// Exact numbers are strings "p/q"; non-real ones {"re": "p/q", "im": "p/q"}.
/// JSON numbers are rejected so that nothing passes through a double.
Json to_json(const GaussRat& z);
GaussRat gauss_from_json(const Json& j);
Rat rat_from_json(const Json& j);

/// {"vars": [...], "terms": [[coefficient, [exponents]], ...]} with terms
/// in the ring's order. As input, {"vars": [...], "expr": "..."} is also
/// accepted.
Json to_json(const MPoly& f);
MPoly poly_from_json(const Json& j);

Json to_json(const QVector& v);
QVector vector_from_json(const Json& j);
Json to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j);
Json to_json(const ProjPoint& p);
ProjPoint point_from_json(const Json& j);

/// {"plane": "image"|"dual", "matrix": [[...]], "form": polynomial}.
Json to_json(const Conic& c);
Conic conic_from_json(const Json& j);

/// {"plane": ..., "matrix": [[...]]}.
Json to_json(const Reflection& s);

Json to_json(const Candidate& c);
Json to_json(const CandidateSet& s);
/// The exact candidates of a CandidateSet document, as dual conics.
std::vector<Conic> candidate_conics(const Json& j);

/// Scene bundle directory: spec.json, camera.json, picture.json,
/// dual_picture.json, absolute.json, dual_absolute.json, nodes.json.
void write_scene_bundle(const std::filesystem::path& dir, const SceneBundle& b);
SceneBundle read_scene_bundle(const std::filesystem::path& dir);

/// Reads a JSON file; IO failures and syntax errors become ParseError.
Json read_json(const std::filesystem::path& path);
/// Writes with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace absconic::io
