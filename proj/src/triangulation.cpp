#include "index3d/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "index3d/tetindex.hpp"

namespace index3d {

namespace {

using nlohmann::json;

std::vector<ExponentVector> read_rows(const json& doc, const char* key, std::size_t count, std::size_t n) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(ErrorKind::ParseError, std::string("missing array '") + key + "'");
  }
  const json& arr = doc[key];
  if (arr.size() != count) {
    throw Error(ErrorKind::ParseError, std::string("'") + key + "' has " + std::to_string(arr.size()) +
                                           " rows, expected " + std::to_string(count));
  }
  std::vector<ExponentVector> rows;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& row = arr[i];
    if (!row.is_array() || row.size() != 3 * n) {
      throw Error(ErrorKind::ParseError, std::string("'") + key + "'[" + std::to_string(i) + "] must hold " +
                                             std::to_string(3 * n) + " integers");
    }
    std::vector<std::int64_t> v;
    for (const json& x : row) {
      if (!x.is_number_integer()) {
        throw Error(ErrorKind::ParseError, std::string("'") + key + "'[" + std::to_string(i) + "] has a non-integer entry");
      }
      v.push_back(x.get<std::int64_t>());
    }
    rows.emplace_back(std::move(v));
  }
  return rows;
}

std::string row_name(const char* kind, std::size_t i) { return std::string(kind) + std::to_string(i); }

// Coordinates (a-b, c-b) per tetrahedron; the tetrahedron vectors map to zero.
std::vector<mpq_class> reduced(const ExponentVector& x) {
  std::vector<mpq_class> v;
  v.reserve(2 * x.num_tetrahedra());
  for (std::size_t j = 0; j < x.num_tetrahedra(); ++j) {
    Triple t = x.triple(j);
    v.emplace_back(t.a - t.b);
    v.emplace_back(t.c - t.b);
  }
  return v;
}

// Incremental row-echelon basis over Q.
class EchelonBasis {
 public:
  // Adds the row if it is independent of those already present.
  bool insert(std::vector<mpq_class> row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const mpq_class& f = row[pivots_[r]];
      if (f == 0) continue;
      mpq_class scale = f / rows_[r][pivots_[r]];
      for (std::size_t c = 0; c < row.size(); ++c) row[c] -= scale * rows_[r][c];
    }
    auto it = std::find_if(row.begin(), row.end(), [](const mpq_class& x) { return x != 0; });
    if (it == row.end()) return false;
    pivots_.push_back(static_cast<std::size_t>(it - row.begin()));
    rows_.push_back(std::move(row));
    return true;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

Triangulation parse_triangulation(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "triangulation document must be a JSON object");
  Triangulation tri;
  try {
    tri.name = doc.value("name", std::string());
    if (!doc.contains("num_tetrahedra") || !doc["num_tetrahedra"].is_number_unsigned()) {
      throw Error(ErrorKind::ParseError, "missing nonnegative integer 'num_tetrahedra'");
    }
    if (!doc.contains("num_cusps") || !doc["num_cusps"].is_number_unsigned()) {
      throw Error(ErrorKind::ParseError, "missing nonnegative integer 'num_cusps'");
    }
    tri.num_tetrahedra = doc["num_tetrahedra"].get<std::size_t>();
    tri.num_cusps = doc["num_cusps"].get<std::size_t>();
    if (tri.num_tetrahedra == 0) throw Error(ErrorKind::ParseError, "'num_tetrahedra' must be positive");
    if (tri.num_cusps > tri.num_tetrahedra) throw Error(ErrorKind::ParseError, "more cusps than tetrahedra");
    tri.edge_rows = read_rows(doc, "edge_rows", tri.num_tetrahedra, tri.num_tetrahedra);
    tri.meridian_rows = read_rows(doc, "meridian_rows", tri.num_cusps, tri.num_tetrahedra);
    tri.longitude_rows = read_rows(doc, "longitude_rows", tri.num_cusps, tri.num_tetrahedra);
    if (doc.contains("independent_edges")) {
      for (const json& x : doc["independent_edges"]) {
        if (!x.is_number_unsigned() || x.get<std::size_t>() >= tri.num_tetrahedra) {
          throw Error(ErrorKind::ParseError, "'independent_edges' entries must be edge indices");
        }
        tri.independent_edges.push_back(x.get<std::size_t>());
      }
    }
    if (!doc.contains("one_efficient") || !doc["one_efficient"].is_boolean()) {
      throw Error(ErrorKind::ParseError, "missing boolean 'one_efficient'");
    }
    tri.one_efficient = doc["one_efficient"].get<bool>();
    tri.non_peripheral_z2_homology = doc.value("non_peripheral_z2_homology", false);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
  return tri;
}

Triangulation read_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Triangulation tri = parse_triangulation(buf.str());
  return tri;
}

std::string triangulation_to_json(const Triangulation& tri) {
  auto rows = [](const std::vector<ExponentVector>& rs) {
    json a = json::array();
    for (const auto& r : rs) a.push_back(r.entries());
    return a;
  };
  json doc;
  doc["name"] = tri.name;
  doc["num_tetrahedra"] = tri.num_tetrahedra;
  doc["num_cusps"] = tri.num_cusps;
  doc["edge_rows"] = rows(tri.edge_rows);
  doc["meridian_rows"] = rows(tri.meridian_rows);
  doc["longitude_rows"] = rows(tri.longitude_rows);
  if (!tri.independent_edges.empty()) doc["independent_edges"] = tri.independent_edges;
  doc["one_efficient"] = tri.one_efficient;
  if (tri.non_peripheral_z2_homology) doc["non_peripheral_z2_homology"] = true;
  return doc.dump();
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& c : checks) {
    out += (c.passed ? "ok    " : "FAIL  ") + c.name;
    if (!c.detail.empty()) out += "  " + c.detail;
    out += "\n";
  }
  if (!independent_edges.empty()) {
    out += "independent edges:";
    for (auto i : independent_edges) out += " " + std::to_string(i);
    out += "\n";
  }
  return out;
}

std::size_t rank_mod_tetrahedra(std::span<const ExponentVector> rows) {
  EchelonBasis basis;
  for (const auto& r : rows) basis.insert(reduced(r));
  return basis.rank();
}

std::vector<std::size_t> select_independent_edges(const Triangulation& tri) {
  EchelonBasis basis;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < tri.edge_rows.size(); ++i) {
    if (basis.insert(reduced(tri.edge_rows[i]))) chosen.push_back(i);
  }
  return chosen;
}

ValidationReport validate_report(const Triangulation& tri) {
  ValidationReport rep;
  const std::size_t n = tri.num_tetrahedra;
  auto record = [&rep](ErrorKind kind, std::string name, bool passed, std::string detail = {}) {
    rep.checks.push_back({std::move(name), passed, std::move(detail)});
    if (!passed && (rep.failures.empty() || rep.failures.back() != kind)) rep.failures.push_back(kind);
  };

  // Entry signs.
  for (std::size_t i = 0; i < tri.edge_rows.size(); ++i) {
    const auto& e = tri.edge_rows[i].entries();
    auto bad = std::find_if(e.begin(), e.end(), [](std::int64_t x) { return x < 0; });
    std::string detail;
    if (bad != e.end()) detail = "entry " + std::to_string(bad - e.begin()) + " is " + std::to_string(*bad);
    record(ErrorKind::NegativeQuadCount, "nonnegative " + row_name("E", i), bad == e.end(), detail);
  }

  // Symplectic relations.
  struct Named {
    std::string name;
    const ExponentVector* row;
    std::size_t cusp;  // n for edges
  };
  std::vector<Named> rows;
  for (std::size_t i = 0; i < tri.edge_rows.size(); ++i) rows.push_back({row_name("E", i), &tri.edge_rows[i], n});
  for (std::size_t k = 0; k < tri.num_cusps; ++k) {
    rows.push_back({row_name("M", k), &tri.meridian_rows[k], k});
    rows.push_back({row_name("L", k), &tri.longitude_rows[k], k});
  }
  for (std::size_t x = 0; x < rows.size(); ++x) {
    for (std::size_t y = x + 1; y < rows.size(); ++y) {
      std::int64_t expected = 0;
      bool same_cusp = rows[x].cusp == rows[y].cusp && rows[x].cusp != n;
      if (same_cusp) expected = rows[x].name[0] == 'M' ? -2 : 2;  // M before L in the list
      std::int64_t got = omega(*rows[x].row, *rows[y].row);
      record(ErrorKind::SymplecticViolation, "omega(" + rows[x].name + "," + rows[y].name + ") = " + std::to_string(expected),
             got == expected, got == expected ? "" : "got " + std::to_string(got));
    }
  }

  // Each quad lies on exactly two edges, counted with multiplicity.
  for (std::size_t c = 0; c < 3 * n; ++c) {
    std::int64_t s = 0;
    for (const auto& e : tri.edge_rows) s += e[c];
    record(ErrorKind::ColumnSumViolation, "column " + std::to_string(c) + " sums to 2", s == 2,
           s == 2 ? "" : "sum is " + std::to_string(s));
  }

  // Rank modulo tetrahedron vectors.
  std::size_t rank = rank_mod_tetrahedra(tri.edge_rows);
  std::size_t want = tri.summation_rank();
  record(ErrorKind::RankDeficient, "edge rank " + std::to_string(want), rank == want,
         rank == want ? "" : "rank is " + std::to_string(rank));
  if (!tri.independent_edges.empty()) {
    std::vector<ExponentVector> picked;
    for (auto i : tri.independent_edges) picked.push_back(tri.edge_rows.at(i));
    std::size_t r = rank_mod_tetrahedra(picked);
    bool good = picked.size() == want && r == want && rank == want;
    record(ErrorKind::RankDeficient, "supplied independent edges", good,
           good ? "" : std::to_string(picked.size()) + " rows of rank " + std::to_string(r));
    rep.independent_edges = tri.independent_edges;
  } else {
    rep.independent_edges = select_independent_edges(tri);
  }

  record(ErrorKind::HomologyHypothesisViolated, "no non-peripheral Z/2 homology", !tri.non_peripheral_z2_homology,
         tri.non_peripheral_z2_homology ? "data is flagged as having non-peripheral Z/2 homology" : "");
  return rep;
}

void validate(Triangulation& tri) {
  ValidationReport rep = validate_report(tri);
  if (!rep.ok()) {
    ErrorKind first = rep.failures.front();
    std::string detail;
    for (const auto& c : rep.checks) {
      if (!c.passed) {
        detail = c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
        break;
      }
    }
    // The first failed check always belongs to the first failed kind.
    throw Error(first, (tri.name.empty() ? "" : tri.name + ": ") + detail);
  }
  tri.independent_edges = rep.independent_edges;
}

Triangulation load_and_validate(const std::string& path) {
  Triangulation tri = read_triangulation(path);
  validate(tri);
  return tri;
}

ExponentVector edge_combination(const Triangulation& tri, std::span<const std::int64_t> k) {
  if (k.size() != tri.independent_edges.size()) {
    throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(tri.independent_edges.size()) +
                                               " edge coefficients, got " + std::to_string(k.size()));
  }
  ExponentVector s(tri.num_tetrahedra);
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] != 0) s += k[i] * tri.edge_rows[tri.independent_edges[i]];
  }
  return s;
}

std::int64_t chi_of_combination(std::span<const std::int64_t> k) {
  std::int64_t s = 0;
  for (auto x : k) s += x;
  return -2 * s;
}

NormalizedSurface normalize_surface(const ExponentVector& s) {
  NormalizedSurface out{s, std::vector<std::int64_t>(s.num_tetrahedra())};
  for (std::size_t j = 0; j < s.num_tetrahedra(); ++j) {
    Triple t = s.triple(j);
    std::int64_t m = std::min({t.a, t.b, t.c});
    out.shifts[j] = m;
    for (std::size_t i = 0; i < 3; ++i) out.s_star[3 * j + i] -= m;
  }
  return out;
}

HalfExp summand_degree(const Triangulation& tri, const ExponentVector& s0, std::span<const std::int64_t> k) {
  ExponentVector sk = edge_combination(tri, k);
  ExponentVector s = sk - s0;
  std::int64_t deg = -chi_of_combination(k) + omega(s0, sk);
  for (std::size_t j = 0; j < s.num_tetrahedra(); ++j) deg += j_degree(s.triple(j)).value;
  return HalfExp(deg);
}

}  // namespace index3d
