#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conetri/cone.hpp"
#include "conetri/errors.hpp"
#include "conetri/verify.hpp"

namespace conetri::cli {

using Json = nlohmann::ordered_json;

// Malformed input; the message names the offending field.
class FormatError : public Error {
 public:
  using Error::Error;
};

struct PieceEntry {
  IntMatrix generators;
  Integer multiplicity;
  long chi = 0;
};

struct SubdivisionEntry {
  long index = 0;
  IntVector vector;
  Rational dilation;
};

struct TriangulationFile {
  SimplicialCone root;
  std::string method;
  std::vector<PieceEntry> pieces;
  std::vector<SubdivisionEntry> subdivision_vectors;
  Json bounds = Json::array();
};

// Integers within +-2^53 are JSON numbers, larger ones decimal strings;
// the readers accept both.
Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j, const std::string& field);
Rational rational_from_string(const std::string& s, const std::string& field);

Json cone_to_json(const SimplicialCone& c);
SimplicialCone cone_from_json(const Json& j, const std::string& field = "cone");

Json bound_report_to_json(const BoundReport& r);

Json triangulation_to_json(const TriangulationFile& t);
TriangulationFile triangulation_from_json(const Json& j);

Json parse_json_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string dump(const Json& j);

}  // namespace conetri::cli
