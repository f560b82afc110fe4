#include "godex/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace godex {
namespace {

constexpr const char* kFormat = "godex/1";

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(where + ": missing key '" + key + "'");
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InvalidInput(where + ": expected an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InvalidInput(where + ": expected a string");
  return j.get<std::string>();
}

Scalar scalar_from_json(const Json& j, const Field& field, const std::string& where) {
  try {
    if (j.is_number_integer()) return Scalar(field, j.get<long long>());
    if (j.is_string()) return Scalar::parse(field, j.get<std::string>());
  } catch (const std::exception& e) {
    throw InvalidInput(where + ": " + e.what());
  }
  throw InvalidInput(where + ": matrix entries must be integers or \"num/den\" strings");
}

Json scalar_to_json(const Scalar& s) {
  if (s.field().is_prime()) return Json(s.residue());
  return Json(s.to_string());
}

int element(const Poset& p, const Json& j, const std::string& where) {
  const std::string name = as_string(j, where);
  try {
    return p.index(name);
  } catch (const UnknownElement&) {
    throw InvalidInput(where + ": unknown element '" + name + "'");
  }
}

Poset poset_from_json(const Json& j) {
  const Json& els = require(j, "elements", "poset");
  if (!els.is_array() || els.empty()) throw InvalidInput("poset: 'elements' must be a non-empty array");
  std::vector<std::string> names;
  for (const auto& e : els) names.push_back(as_string(e, "poset.elements"));
  std::vector<std::pair<std::string, std::string>> rel;
  if (auto it = j.find("relations"); it != j.end()) {
    if (!it->is_array()) throw InvalidInput("poset: 'relations' must be an array");
    for (const auto& r : *it) {
      if (!r.is_array() || r.size() != 2) throw InvalidInput("poset.relations: each entry is [lower, upper]");
      rel.emplace_back(as_string(r[0], "poset.relations"), as_string(r[1], "poset.relations"));
    }
  }
  try {
    return Poset(std::move(names), rel);
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("poset: ") + e.what());
  }
}

// {"degree": matrix} between two complexes.
ChainMap chain_map_from_json(const Json& j, const CochainComplex& s, const CochainComplex& t, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": expected an object keyed by degree");
  std::map<int, Matrix> comps;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InvalidInput(where + ": degree key '" + it.key() + "' is not an integer");
    }
    const std::string w = where + " degree " + std::to_string(n);
    comps.emplace(n, matrix_from_json(it.value(), s.field(), t.dim(n), s.dim(n), w));
  }
  try {
    ChainMap f(s, t, std::move(comps));
    f.validate();
    return f;
  } catch (const std::exception& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

Json chain_map_to_json(const ChainMap& f) {
  Json out = Json::object();
  for (int n = f.lo(); n <= f.hi(); ++n) {
    if (f.source().dim(n) == 0 || f.target().dim(n) == 0) continue;
    out[std::to_string(n)] = matrix_to_json(f.component(n));
  }
  return out;
}

Sheaf sheaf_from_json(const Json& j, std::shared_ptr<const Poset> p, const Field& field, const std::string& where) {
  const Json& st = require(j, "stalks", where);
  if (!st.is_object()) throw InvalidInput(where + ".stalks: expected an object keyed by element");
  std::vector<CochainComplex> stalks(p->size(), CochainComplex(field, 0));
  std::vector<bool> seen(p->size(), false);
  for (auto it = st.begin(); it != st.end(); ++it) {
    const int x = element(*p, Json(it.key()), where + ".stalks");
    seen[static_cast<std::size_t>(x)] = true;
    stalks[static_cast<std::size_t>(x)] = complex_from_json(it.value(), field, where + " stalk " + it.key());
  }
  for (std::size_t x = 0; x < seen.size(); ++x) {
    if (!seen[x]) throw InvalidInput(where + ": no stalk for element '" + p->name(static_cast<int>(x)) + "'");
  }
  std::map<std::pair<int, int>, ChainMap> res;
  if (auto it = j.find("restrictions"); it != j.end()) {
    if (!it->is_array()) throw InvalidInput(where + ".restrictions: expected an array");
    for (const auto& r : *it) {
      const int x = element(*p, require(r, "from", where + ".restrictions"), where + ".restrictions");
      const int y = element(*p, require(r, "to", where + ".restrictions"), where + ".restrictions");
      const std::string w = where + " restriction " + p->name(x) + "->" + p->name(y);
      res.emplace(std::make_pair(x, y),
                  chain_map_from_json(require(r, "components", w), stalks[x], stalks[y], w));
    }
  }
  try {
    return Sheaf(p, field, std::move(stalks), std::move(res));
  } catch (const std::exception& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

SheafMap sheaf_map_from_json(const Json& j, const Sheaf& s, const Sheaf& t) {
  const Json& comps = require(j, "components", "map");
  const Poset& p = s.poset();
  std::vector<ChainMap> out;
  for (int x = 0; x < static_cast<int>(p.size()); ++x) {
    auto it = comps.find(p.name(x));
    if (it == comps.end()) {
      out.push_back(ChainMap::zero(s.stalk(x), t.stalk(x)));
    } else {
      out.push_back(chain_map_from_json(*it, s.stalk(x), t.stalk(x), "map at " + p.name(x)));
    }
  }
  SheafMap f(s, t, std::move(out));
  if (auto fail = f.failure()) throw InvalidInput("map: " + *fail);
  return f;
}

FilteredComplex filtered_from_json(const Json& j, const Field& field) {
  CochainComplex base = complex_from_json(require(j, "complex", "filtered"), field, "filtered.complex");
  const int k_min = as_int(require(j, "k_min", "filtered"), "filtered.k_min");
  const int k_max = as_int(require(j, "k_max", "filtered"), "filtered.k_max");
  if (k_max < k_min) throw InvalidInput("filtered: k_max < k_min");
  std::map<int, std::vector<Subspace>> steps;
  if (auto it = j.find("steps"); it != j.end()) {
    for (auto s = it->begin(); s != it->end(); ++s) {
      const int n = std::stoi(s.key());
      if (!s->is_array() || s->size() != static_cast<std::size_t>(k_max - k_min + 1)) {
        throw InvalidInput("filtered.steps degree " + s.key() + ": need one basis per k in [k_min, k_max]");
      }
      std::vector<Subspace> v;
      for (std::size_t k = 0; k < s->size(); ++k) {
        const Json& m = (*s)[k];
        const std::size_t cols = m.is_array() && !m.empty() && m[0].is_array() ? m[0].size() : 0;
        const std::string w = "filtered.steps degree " + s.key() + " k=" + std::to_string(k_min + static_cast<int>(k));
        v.push_back(Subspace::span(matrix_from_json(m, field, base.dim(n), cols, w)));
      }
      steps.emplace(n, std::move(v));
    }
  }
  try {
    return FilteredComplex(base, k_min, k_max, std::move(steps));
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("filtered: ") + e.what());
  }
}

MonotoneMap monotone_from_json(const Json& j, std::shared_ptr<const Poset> source) {
  auto target = std::make_shared<const Poset>(poset_from_json(require(j, "target", "monotone")));
  const Json& img = require(j, "images", "monotone");
  MonotoneMap f{source, target, std::vector<int>(source->size(), -1)};
  for (auto it = img.begin(); it != img.end(); ++it) {
    const int x = element(*source, Json(it.key()), "monotone.images");
    f.images[static_cast<std::size_t>(x)] = element(*target, it.value(), "monotone.images");
  }
  for (std::size_t x = 0; x < f.images.size(); ++x) {
    if (f.images[x] < 0) throw InvalidInput("monotone: no image for '" + source->name(static_cast<int>(x)) + "'");
  }
  try {
    f.validate();
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("monotone: ") + e.what());
  }
  return f;
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ParseError::ParseError(const std::string& what, int l, int c)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what),
      line(l),
      column(c) {}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const Field& field, std::size_t rows, std::size_t cols,
                        const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": a matrix is an array of rows");
  if (j.size() != rows) {
    throw InvalidInput(where + ": expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  }
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw InvalidInput(where + ": row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m.set(i, c, scalar_from_json(j[i][c], field, where));
  }
  return m;
}

Json complex_to_json(const CochainComplex& c) {
  Json out = Json::object();
  out["lo"] = c.lo();
  Json dims = Json::array();
  Json d = Json::array();
  for (int n = c.lo(); n <= c.hi(); ++n) dims.push_back(c.dim(n));
  for (int n = c.lo(); n < c.hi(); ++n) d.push_back(matrix_to_json(c.d(n)));
  out["dims"] = std::move(dims);
  out["d"] = std::move(d);
  if (c.truncated_at()) out["truncated_at"] = *c.truncated_at();
  return out;
}

CochainComplex complex_from_json(const Json& j, const Field& field, const std::string& where) {
  const int lo = as_int(require(j, "lo", where), where + ".lo");
  const Json& dj = require(j, "dims", where);
  if (!dj.is_array()) throw InvalidInput(where + ".dims: expected an array");
  std::vector<std::size_t> dims;
  for (const auto& x : dj) {
    if (!x.is_number_integer() || x.get<long long>() < 0) throw InvalidInput(where + ".dims: expected counts");
    dims.push_back(x.get<std::size_t>());
  }
  std::vector<Matrix> diffs;
  if (auto it = j.find("d"); it != j.end()) {
    if (!it->is_array() || (it->size() + 1 != dims.size() && !(dims.empty() && it->empty()))) {
      throw InvalidInput(where + ".d: need one matrix per consecutive pair of degrees");
    }
    for (std::size_t k = 0; k < it->size(); ++k) {
      diffs.push_back(matrix_from_json((*it)[k], field, dims[k + 1], dims[k],
                                       where + " d^" + std::to_string(lo + static_cast<int>(k))));
    }
  } else {
    for (std::size_t k = 0; k + 1 < dims.size(); ++k) diffs.emplace_back(field, dims[k + 1], dims[k]);
  }
  std::optional<int> trunc;
  if (auto it = j.find("truncated_at"); it != j.end()) trunc = as_int(*it, where + ".truncated_at");
  CochainComplex c = dims.empty() ? CochainComplex(field, lo) : CochainComplex(field, lo, dims, std::move(diffs), trunc);
  for (int n = c.lo(); n + 1 < c.hi(); ++n) {
    if (!(c.d(n + 1) * c.d(n)).is_zero()) {
      throw InvalidInput(where + ": d∘d != 0 at degree " + std::to_string(n));
    }
  }
  return c;
}

Json poset_to_json(const Poset& p) {
  Json out = Json::object();
  out["elements"] = p.names();
  Json rel = Json::array();
  for (const auto& [x, y] : p.covers()) rel.push_back(Json::array({p.name(x), p.name(y)}));
  out["relations"] = std::move(rel);
  return out;
}

Json sheaf_to_json(const Sheaf& f) {
  const Poset& p = f.poset();
  Json out = Json::object();
  Json stalks = Json::object();
  for (int x = 0; x < static_cast<int>(p.size()); ++x) stalks[p.name(x)] = complex_to_json(f.stalk(x));
  out["stalks"] = std::move(stalks);
  Json res = Json::array();
  for (const auto& [x, y] : p.covers()) {
    Json r = Json::object();
    r["from"] = p.name(x);
    r["to"] = p.name(y);
    r["components"] = chain_map_to_json(f.restriction(x, y));
    res.push_back(std::move(r));
  }
  out["restrictions"] = std::move(res);
  return out;
}

Json sheaf_map_to_json(const SheafMap& f) {
  const Poset& p = f.source().poset();
  Json comps = Json::object();
  for (int x = 0; x < static_cast<int>(p.size()); ++x) comps[p.name(x)] = chain_map_to_json(f.component(x));
  Json out = Json::object();
  out["components"] = std::move(comps);
  return out;
}

Json filtered_to_json(const FilteredComplex& fc) {
  Json out = Json::object();
  out["complex"] = complex_to_json(fc.base());
  out["k_min"] = fc.k_min();
  out["k_max"] = fc.k_max();
  Json steps = Json::object();
  for (int n = fc.base().lo(); n <= fc.base().hi(); ++n) {
    if (fc.base().dim(n) == 0) continue;
    Json v = Json::array();
    for (int k = fc.k_min(); k <= fc.k_max(); ++k) v.push_back(matrix_to_json(fc.step(k, n).basis()));
    steps[std::to_string(n)] = std::move(v);
  }
  out["steps"] = std::move(steps);
  return out;
}

Json betti_to_json(const std::map<int, std::size_t>& betti) {
  Json out = Json::object();
  for (const auto& [n, b] : betti) out[std::to_string(n)] = b;
  return out;
}

Json problem_to_json(const ProblemFile& pf) {
  Json out = Json::object();
  out["format"] = kFormat;
  out["field"] = pf.field.to_string();
  if (pf.poset) out["poset"] = poset_to_json(*pf.poset);
  if (pf.sheaf) out["sheaf"] = sheaf_to_json(*pf.sheaf);
  if (pf.target) out["target"] = sheaf_to_json(*pf.target);
  if (pf.map) out["map"] = sheaf_map_to_json(*pf.map);
  if (pf.filtered) out["filtered"] = filtered_to_json(*pf.filtered);
  if (pf.monotone) {
    Json m = Json::object();
    m["target"] = poset_to_json(*pf.monotone->target);
    Json img = Json::object();
    for (std::size_t x = 0; x < pf.monotone->images.size(); ++x) {
      img[pf.monotone->source->name(static_cast<int>(x))] = pf.monotone->target->name(pf.monotone->images[x]);
    }
    m["images"] = std::move(img);
    out["monotone"] = std::move(m);
  }
  return out;
}

namespace {

bool is_flat(const Json& j) {
  return std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
}

// Two-space indent; arrays of scalars (matrix rows, dims) stay on one line.
void dump_into(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      out += pad + Json(it.key()).dump() + ": ";
      dump_into(out, it.value(), indent + 2);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += pad;
      dump_into(out, j[k], indent + 2);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + j[k].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump_canonical(const Json& j) {
  std::string out;
  dump_into(out, j, 0);
  return out + "\n";
}

std::string serialize_problem(const ProblemFile& pf) { return dump_canonical(problem_to_json(pf)); }

ProblemFile parse_problem(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    std::string msg = e.what();
    if (auto pos = msg.find("parse error"); pos != std::string::npos) {
      if (auto colon = msg.find(": ", pos); colon != std::string::npos) msg = msg.substr(colon + 2);
    }
    throw ParseError(msg, line, column);
  }
  if (!j.is_object()) throw InvalidInput("top level must be an object");
  const std::string format = as_string(require(j, "format", "file"), "format");
  if (format != kFormat) throw InvalidInput("unsupported format '" + format + "' (expected godex/1)");
  ProblemFile pf;
  try {
    pf.field = Field::parse(as_string(require(j, "field", "file"), "field"));
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("field: ") + e.what());
  }
  if (auto it = j.find("poset"); it != j.end()) pf.poset = std::make_shared<const Poset>(poset_from_json(*it));
  auto need_poset = [&](const char* what) {
    if (!pf.poset) throw InvalidInput(std::string(what) + " needs a poset");
  };
  if (auto it = j.find("sheaf"); it != j.end()) {
    need_poset("sheaf");
    pf.sheaf = sheaf_from_json(*it, pf.poset, pf.field, "sheaf");
  }
  if (auto it = j.find("target"); it != j.end()) {
    need_poset("target");
    pf.target = sheaf_from_json(*it, pf.poset, pf.field, "target");
  }
  if (auto it = j.find("map"); it != j.end()) {
    if (!pf.sheaf || !pf.target) throw InvalidInput("map needs both 'sheaf' and 'target'");
    pf.map = sheaf_map_from_json(*it, *pf.sheaf, *pf.target);
  }
  if (auto it = j.find("filtered"); it != j.end()) pf.filtered = filtered_from_json(*it, pf.field);
  if (auto it = j.find("monotone"); it != j.end()) {
    need_poset("monotone");
    pf.monotone = monotone_from_json(*it, pf.poset);
  }
  return pf;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace godex
