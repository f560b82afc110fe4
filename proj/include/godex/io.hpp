#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "godex/filtered.hpp"
#include "godex/site.hpp"

namespace godex {

using Json = nlohmann::ordered_json;

/// Malformed JSON; line and column (1-based) of the last character read.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line, int column);
  int line = 0;
  int column = 0;
};
/// Well-formed JSON that does not describe a valid problem.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Contents of a "godex/1" problem file. Every block except the field is
/// optional; commands check for what they need.
struct ProblemFile {
  Field field;
  std::shared_ptr<const Poset> poset;
  std::optional<Sheaf> sheaf;
  /// A second sheaf on the same poset and a map sheaf -> target.
  std::optional<Sheaf> target;
  std::optional<SheafMap> map;
  std::optional<FilteredComplex> filtered;
  /// A monotone map out of `poset`.
  std::optional<MonotoneMap> monotone;
};

ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::string& path);
/// Canonical form: fixed key order, covers only, two-space indent, one
/// trailing newline. Rationals are "num/den" strings, residues integers.
std::string serialize_problem(const ProblemFile& problem);
Json problem_to_json(const ProblemFile& problem);

Json matrix_to_json(const Matrix& m);
Json complex_to_json(const CochainComplex& c);
Json poset_to_json(const Poset& p);
Json sheaf_to_json(const Sheaf& f);
Json sheaf_map_to_json(const SheafMap& f);
Json filtered_to_json(const FilteredComplex& fc);
Json betti_to_json(const std::map<int, std::size_t>& betti);

Matrix matrix_from_json(const Json& j, const Field& field, std::size_t rows, std::size_t cols, const std::string& where);
CochainComplex complex_from_json(const Json& j, const Field& field, const std::string& where);

/// Canonical text of any JSON value, as written by serialize_problem.
std::string dump_canonical(const Json& j);

}  // namespace godex
