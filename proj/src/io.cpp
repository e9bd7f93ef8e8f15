#include "bisector_lab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bisector_lab {

namespace {

constexpr std::uint64_t kJsonSafeInteger = std::uint64_t{1} << 53;

std::uint64_t parse_residue(const std::string& token, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw LabError(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": '" + token + "' is not a residue");
  return v;
}

Scalar checked(std::uint64_t v, const PrimeModulus& m, std::size_t line_no) {
  if (v >= m.p())
    throw LabError(ErrorCode::ModulusMismatch, "line " + std::to_string(line_no) + ": " + std::to_string(v) +
                                                   " is not reduced mod " + std::to_string(m.p()));
  return Scalar(static_cast<std::uint32_t>(v));
}

}  // namespace

GeneratedSet parse_set(std::istream& in, const PrimeModulus& m) {
  std::vector<Point2> points;
  std::vector<Scalar> residues;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() > 2)
      throw LabError(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 1 or 2 fields");
    if ((tokens.size() == 2 && !residues.empty()) || (tokens.size() == 1 && !points.empty()))
      throw LabError(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": mixes points and residues");
    if (tokens.size() == 2)
      points.push_back({checked(parse_residue(tokens[0], line_no), m, line_no),
                        checked(parse_residue(tokens[1], line_no), m, line_no)});
    else
      residues.push_back(checked(parse_residue(tokens[0], line_no), m, line_no));
  }
  if (!residues.empty()) return ResidueSet(m, std::move(residues));
  return PlaneSet(m, std::move(points));
}

GeneratedSet read_set_file(const std::string& path, const PrimeModulus& m) {
  std::ifstream in(path);
  if (!in) throw LabError(ErrorCode::ParseError, "cannot open " + path);
  return parse_set(in, m);
}

void write_set(std::ostream& out, const PlaneSet& e) {
  for (const Point2& q : e.points()) out << q.x1.value << ' ' << q.x2.value << '\n';
}

void write_set(std::ostream& out, const ResidueSet& a) {
  for (Scalar x : a.elems()) out << x.value << '\n';
}

Json json_count(Count value) {
  if (value <= kJsonSafeInteger) return static_cast<std::uint64_t>(value);
  return to_string(value);
}

Json json_quantity(const Quantity& q) {
  if (const auto* r = std::get_if<Rational>(&q)) {
    if (denominator(*r) == 1 && *r >= 0 && *r <= kJsonSafeInteger)
      return numerator(*r).convert_to<std::uint64_t>();
    return to_string(*r);
  }
  const double d = std::get<double>(q);
  if (!std::isfinite(d)) return nullptr;
  return d;
}

Json to_json(const CheckReport& r) {
  Json j;
  j["name"] = r.name;
  j["mode"] = r.mode == CheckMode::Assert ? "ASSERT" : "REPORT";
  j["status"] = r.skipped ? "SKIPPED" : r.pass ? "PASS" : "FAIL";
  if (!r.skipped) {
    if (r.mode == CheckMode::Assert)
      j["relation"] = r.relation == Relation::Equal ? "==" : r.relation == Relation::Less ? "<" : "<=";
    j["lhs"] = json_quantity(r.lhs);
    j["rhs"] = json_quantity(r.rhs);
    j["ratio"] = json_quantity(r.ratio);
  }
  j["context"] = r.context;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.details.empty()) {
    Json d = Json::object();
    for (const auto& [k, v] : r.details) d[k] = json_quantity(v);
    j["details"] = d;
  }
  return j;
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_quantity(const Quantity& q) {
  if (const auto* r = std::get_if<Rational>(&q)) return to_string(*r);
  return format_double(std::get<double>(q));
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace bisector_lab
