#pragma once

// Set files and report serialization.
//
// Set files are UTF-8 text: one "x y" point or one residue per line, decimal,
// with '#' comments and blank lines ignored. A file holds points or residues,
// never both; an empty file reads as an empty point set.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bisector_lab/gen.hpp"
#include "bisector_lab/report.hpp"

namespace bisector_lab {

using Json = nlohmann::ordered_json;

/// Throws ParseError for malformed lines, ModulusMismatch for values >= p.
GeneratedSet parse_set(std::istream& in, const PrimeModulus& m);
GeneratedSet read_set_file(const std::string& path, const PrimeModulus& m);

void write_set(std::ostream& out, const PlaneSet& e);
void write_set(std::ostream& out, const ResidueSet& a);

/// Integers up to 2^53 as JSON numbers, larger ones as decimal strings.
Json json_count(Count value);
/// Integral rationals as json_count, others as "num/den" strings, doubles as numbers.
Json json_quantity(const Quantity& q);
Json to_json(const CheckReport& r);

/// Shortest round-trip decimal form; empty for non-finite values.
std::string format_double(double x);
std::string csv_quantity(const Quantity& q);
/// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_escape(const std::string& field);

}  // namespace bisector_lab
