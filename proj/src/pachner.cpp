#include "index3d/pachner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "index3d/errors.hpp"
#include "index3d/expr.hpp"

namespace index3d {

namespace {

using nlohmann::json;

std::vector<std::size_t> index_list(const json& doc, const char* key) {
  std::vector<std::size_t> out;
  if (!doc.contains(key)) return out;
  if (!doc[key].is_array()) throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be an array");
  for (const json& x : doc[key]) {
    if (!x.is_number_unsigned()) throw Error(ErrorKind::ParseError, std::string("'") + key + "' holds a non-index");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

void check_descriptor(const MoveDescriptor& d, std::size_t ns, std::size_t nt) {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidDescriptor, why); };
  std::size_t removed = d.kind == MoveKind::ThreeTwo ? 2 : 0;
  std::size_t inserted = d.kind == MoveKind::ThreeTwo ? 3 : 2;
  if (d.removed_tets.size() != removed) fail("expected " + std::to_string(removed) + " removed tetrahedra");
  if (d.inserted_tets.size() != inserted) fail("expected " + std::to_string(inserted) + " inserted tetrahedra");
  if (ns - removed + inserted != nt) {
    fail("tetrahedron counts " + std::to_string(ns) + " and " + std::to_string(nt) + " do not fit the move");
  }
  if (d.fixed_map.size() != ns - removed) fail("fixed_map must cover every untouched source tetrahedron");
  std::set<std::size_t> src(d.removed_tets.begin(), d.removed_tets.end());
  std::set<std::size_t> dst(d.inserted_tets.begin(), d.inserted_tets.end());
  if (src.size() != d.removed_tets.size() || dst.size() != d.inserted_tets.size()) fail("repeated tetrahedron index");
  for (auto [a, b] : d.fixed_map) {
    if (!src.insert(a).second) fail("source tetrahedron " + std::to_string(a) + " used twice");
    if (!dst.insert(b).second) fail("target tetrahedron " + std::to_string(b) + " used twice");
  }
  if ((!src.empty() && *src.rbegin() >= ns) || (!dst.empty() && *dst.rbegin() >= nt)) fail("tetrahedron index out of range");
  for (const auto& [t, p] : d.quad_perms) {
    std::array<std::size_t, 3> s = p;
    std::sort(s.begin(), s.end());
    if (t >= nt || s != std::array<std::size_t, 3>{0, 1, 2}) fail("invalid quad permutation");
  }
}

std::size_t slot(std::size_t tet, Quad q) { return 3 * tet + static_cast<std::size_t>(q); }

}  // namespace

MoveDescriptor parse_move_descriptor(std::string_view json_text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "move descriptor must be a JSON object");
  MoveDescriptor d;
  try {
    std::string kind = doc.at("kind").get<std::string>();
    if (kind == "3-2") d.kind = MoveKind::ThreeTwo;
    else if (kind == "2-0") d.kind = MoveKind::TwoZero;
    else throw Error(ErrorKind::InvalidDescriptor, "unknown move kind '" + kind + "'");
    auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      return (path.is_absolute() ? path : std::filesystem::path(base_dir) / path).lexically_normal().string();
    };
    d.source_path = resolve(doc.at("source").get<std::string>());
    d.target_path = resolve(doc.at("target").get<std::string>());
    d.removed_tets = index_list(doc, "removed_tets");
    d.inserted_tets = index_list(doc, "inserted_tets");
    if (doc.contains("fixed_map")) {
      for (const json& pr : doc["fixed_map"]) d.fixed_map.emplace_back(pr.at(0).get<std::size_t>(), pr.at(1).get<std::size_t>());
    }
    if (doc.contains("quad_perms")) {
      for (const json& pr : doc["quad_perms"]) {
        d.quad_perms.emplace_back(pr.at(0).get<std::size_t>(), pr.at(1).get<std::array<std::size_t, 3>>());
      }
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
  return d;
}

MoveDescriptor read_move_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_move_descriptor(buf.str(), std::filesystem::path(path).parent_path().string());
}

MoveMap::MoveMap(std::size_t source_tets, std::size_t target_tets)
    : target_size_(3 * target_tets), cols_(3 * source_tets, ExponentVector(target_tets)) {}

ExponentVector MoveMap::apply(const ExponentVector& u) const {
  if (u.size() != cols_.size()) {
    throw Error(ErrorKind::LengthMismatch, "move map expects vectors of length " + std::to_string(cols_.size()));
  }
  ExponentVector out(target_size_ / 3);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != 0) out += u[i] * cols_[i];
  }
  return out;
}

MoveMap build_move_map(const MoveDescriptor& desc, std::size_t ns, std::size_t nt) {
  check_descriptor(desc, ns, nt);
  MoveMap map(ns, nt);
  for (auto [a, b] : desc.fixed_map) {
    for (std::size_t q = 0; q < 3; ++q) map.column(3 * a + q)[3 * b + q] = 1;
  }
  if (desc.kind == MoveKind::ThreeTwo) {
    const std::size_t z = desc.removed_tets[0], w = desc.removed_tets[1];
    const std::size_t x = desc.inserted_tets[0], y = desc.inserted_tets[1], v = desc.inserted_tets[2];
    struct Image {
      std::size_t source;
      std::size_t t1;
      Quad q1;
      std::size_t t2;
      Quad q2;
    };
    const Image images[] = {
        {slot(z, Quad::A), v, Quad::C, x, Quad::B},  // Z   -> V'' X'
        {slot(z, Quad::B), x, Quad::C, y, Quad::B},  // Z'  -> X'' Y'
        {slot(z, Quad::C), y, Quad::C, v, Quad::B},  // Z'' -> Y'' V'
        {slot(w, Quad::A), x, Quad::C, v, Quad::B},  // W   -> X'' V'
        {slot(w, Quad::B), v, Quad::C, y, Quad::B},  // W'  -> V'' Y'
        {slot(w, Quad::C), y, Quad::C, x, Quad::B},  // W'' -> Y'' X'
    };
    for (const auto& im : images) {
      map.column(im.source)[slot(im.t1, im.q1)] += 1;
      map.column(im.source)[slot(im.t2, im.q2)] += 1;
    }
  }
  for (const auto& [t, p] : desc.quad_perms) {
    for (std::size_t i = 0; i < map.source_size(); ++i) {
      ExponentVector& c = map.column(i);
      std::array<std::int64_t, 3> old{c[3 * t], c[3 * t + 1], c[3 * t + 2]};
      for (std::size_t s = 0; s < 3; ++s) c[3 * t + p[s]] = old[s];
    }
  }
  for (std::size_t i = 0; i < map.source_size(); ++i) {
    for (std::size_t j = i + 1; j < map.source_size(); ++j) {
      ExponentVector ei(ns), ej(ns);
      ei[i] = 1;
      ej[j] = 1;
      std::int64_t before = omega(ei, ej);
      std::int64_t after = omega(map.column(i), map.column(j));
      if (before != after) {
        static const char* names[] = {"Z", "Z'", "Z''"};
        throw Error(ErrorKind::SymplecticNotPreserved,
                    "omega(" + std::string(names[i % 3]) + "_" + std::to_string(i / 3) + ", " + names[j % 3] + "_" +
                        std::to_string(j / 3) + ") is " + std::to_string(before) + " but its image pairs to " +
                        std::to_string(after));
      }
    }
  }
  return map;
}

TorusElement apply_move(const MoveMap& map, const TorusElement& u) {
  TorusElement out(map.target_size() / 3);
  for (const auto& [k, c] : u.terms()) out.add_term(map.apply(k), c);
  return out;
}

bool CompatibilityReport::all_passed() const {
  return std::all_of(samples.begin(), samples.end(), [](const CompatibilitySample& s) { return s.passed; });
}

std::string CompatibilityReport::to_string() const {
  std::string out;
  for (const auto& s : samples) {
    out += (s.passed ? "pass  " : "FAIL  ") + s.label + "\n";
    out += "  source: " + s.source_index.to_string() + "\n";
    out += "  target: " + s.target_index.to_string() + "\n";
  }
  return out;
}

CompatibilityReport verify_index_compatibility(const Triangulation& source, const Triangulation& target,
                                               const MoveMap& map, const std::vector<TorusElement>& samples,
                                               const SummationOptions& opts) {
  CompatibilityReport rep;
  for (const auto& u : samples) {
    CompatibilitySample s;
    s.label = format_element(u);
    s.source_index = index_element(source, u, opts).series;
    s.target_index = index_element(target, apply_move(map, u), opts).series;
    s.first_difference = first_difference(s.source_index, s.target_index, opts.order);
    s.passed = s.first_difference >= opts.order;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace index3d
