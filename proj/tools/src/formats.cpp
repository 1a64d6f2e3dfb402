#include "conetri/cli/formats.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace conetri::cli {

namespace {

const Integer& json_safe_limit() {
  static const Integer limit("9007199254740992");  // 2^53
  return limit;
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(where + "." + key + ": missing field");
  return *it;
}

IntVector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw FormatError(field + ": expected an array of integers");
  IntVector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

IntMatrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw FormatError(field + ": expected a nonempty array of rows");
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    rows.push_back(vector_from_json(j[r], field + "[" + std::to_string(r) + "]"));
    if (rows.back().size() != rows.front().size())
      throw FormatError(field + "[" + std::to_string(r) + "]: row length differs from row 0");
  }
  if (rows.front().empty()) throw FormatError(field + ": rows are empty");
  return IntMatrix::from_rows(rows);
}

Json quantity_to_json(const Quantity& q) { return q.to_string(); }

}  // namespace

Json integer_to_json(const Integer& v) {
  if (abs(v) <= json_safe_limit()) return Json(v.get_si());
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                                           : Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Integer v;
    const bool digits = !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos &&
                        s.find('-', 1) == std::string::npos && s != "-";
    if (!digits || v.set_str(s, 10) != 0) throw FormatError(field + ": '" + s + "' is not a decimal integer");
    return v;
  }
  throw FormatError(field + ": expected an integer or a decimal string");
}

Rational rational_from_string(const std::string& s, const std::string& field) {
  const auto slash = s.find('/');
  Json num = slash == std::string::npos ? Json(s) : Json(s.substr(0, slash));
  Json den = slash == std::string::npos ? Json("1") : Json(s.substr(slash + 1));
  const Integer n = integer_from_json(num, field);
  const Integer d = integer_from_json(den, field);
  if (d == 0) throw FormatError(field + ": zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Json cone_to_json(const SimplicialCone& c) {
  Json out;
  out["d"] = c.dimension();
  out["generators"] = matrix_to_json(c.generators());
  return out;
}

SimplicialCone cone_from_json(const Json& j, const std::string& field) {
  const Json& d_json = require(j, "d", field);
  if (!d_json.is_number_integer()) throw FormatError(field + ".d: expected an integer");
  const long d = d_json.get<long>();
  if (d < 2) throw FormatError(field + ".d: dimension must be at least 2");
  IntMatrix rows = matrix_from_json(require(j, "generators", field), field + ".generators");
  if (rows.rows() != static_cast<std::size_t>(d) || rows.cols() != static_cast<std::size_t>(d)) {
    throw FormatError(field + ".generators: expected " + std::to_string(d) + " rows of " + std::to_string(d) +
                      " integers");
  }
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    if (is_zero(rows.row(r)))
      throw FormatError(field + ".generators[" + std::to_string(r) + "]: zero generator");
  }
  if (determinant(rows) == 0) throw FormatError(field + ".generators: rows are linearly dependent");
  return SimplicialCone::make(rows);
}

Json bound_report_to_json(const BoundReport& r) {
  Json out;
  out["bound_name"] = r.bound_name;
  out["bound_value"] = quantity_to_json(r.bound_value);
  out["measured"] = quantity_to_json(r.measured);
  out["satisfied"] = r.satisfied;
  out["skipped"] = r.skipped;
  out["near_tie"] = r.near_tie;
  out["checked"] = r.checked;
  out["violations"] = r.violations;
  out["witness"] = r.witness ? vector_to_json(*r.witness) : Json(nullptr);
  out["implied_exponent"] = r.implied_exponent ? Json(to_decimal_string(*r.implied_exponent, 30)) : Json(nullptr);
  out["note"] = r.note;
  return out;
}

Json triangulation_to_json(const TriangulationFile& t) {
  Json out;
  out["root"] = cone_to_json(t.root);
  out["method"] = t.method;
  Json pieces = Json::array();
  for (const auto& p : t.pieces) {
    Json e;
    e["generators"] = matrix_to_json(p.generators);
    e["multiplicity"] = p.multiplicity.get_str();
    e["chi"] = p.chi;
    pieces.push_back(std::move(e));
  }
  out["pieces"] = std::move(pieces);
  Json vectors = Json::array();
  for (const auto& s : t.subdivision_vectors) {
    Json e;
    e["index"] = s.index;
    e["vector"] = vector_to_json(s.vector);
    e["dilation"] = to_string(s.dilation);
    vectors.push_back(std::move(e));
  }
  out["subdivision_vectors"] = std::move(vectors);
  out["bounds"] = t.bounds;
  return out;
}

TriangulationFile triangulation_from_json(const Json& j) {
  const std::string top = "triangulation";
  SimplicialCone root = cone_from_json(require(j, "root", top), "root");
  const Json& method = require(j, "method", top);
  if (!method.is_string()) throw FormatError("method: expected a string");
  TriangulationFile t{root, method.get<std::string>(), {}, {}, Json::array()};

  const Json& pieces = require(j, "pieces", top);
  if (!pieces.is_array() || pieces.empty()) throw FormatError("pieces: expected a nonempty array");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string where = "pieces[" + std::to_string(i) + "]";
    PieceEntry e{matrix_from_json(require(pieces[i], "generators", where), where + ".generators"),
                 integer_from_json(require(pieces[i], "multiplicity", where), where + ".multiplicity"), 0};
    if (e.generators.rows() != root.dimension() || e.generators.cols() != root.dimension())
      throw FormatError(where + ".generators: dimension differs from root");
    const Json& chi = require(pieces[i], "chi", where);
    if (!chi.is_number_integer()) throw FormatError(where + ".chi: expected an integer");
    e.chi = chi.get<long>();
    t.pieces.push_back(std::move(e));
  }

  const Json& vectors = require(j, "subdivision_vectors", top);
  if (!vectors.is_array()) throw FormatError("subdivision_vectors: expected an array");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const std::string where = "subdivision_vectors[" + std::to_string(i) + "]";
    const Json& index = require(vectors[i], "index", where);
    if (!index.is_number_integer()) throw FormatError(where + ".index: expected an integer");
    SubdivisionEntry e{index.get<long>(), vector_from_json(require(vectors[i], "vector", where), where + ".vector"),
                       0};
    if (e.vector.size() != root.dimension()) throw FormatError(where + ".vector: dimension differs from root");
    const Json& dil = require(vectors[i], "dilation", where);
    if (!dil.is_string()) throw FormatError(where + ".dilation: expected a \"num/den\" string");
    e.dilation = rational_from_string(dil.get<std::string>(), where + ".dilation");
    t.subdivision_vectors.push_back(std::move(e));
  }

  if (auto it = j.find("bounds"); it != j.end()) {
    if (!it->is_array()) throw FormatError("bounds: expected an array");
    t.bounds = *it;
  }
  return t;
}

Json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace conetri::cli
