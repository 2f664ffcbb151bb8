#include "index3d/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "index3d/errors.hpp"
#include "index3d/expr.hpp"
#include "index3d/fixtures.hpp"
#include "index3d/indexer.hpp"
#include "index3d/pachner.hpp"
#include "index3d/tetindex.hpp"

namespace index3d {

namespace {

struct Output {
  bool json = false;
  bool pretty = false;
};

struct SumFlags {
  std::int64_t order = 0;
  std::int64_t shell_window = 3;
  std::int64_t max_radius = 200;
  unsigned threads = 1;

  SummationOptions options() const {
    SummationOptions o;
    o.order = HalfExp(order);
    o.shell_window = shell_window;
    o.max_radius = max_radius;
    o.threads = threads;
    return o;
  }
};

void add_order(CLI::App* cmd, std::int64_t& order) {
  cmd->add_option("--order", order, "truncation order in powers of q^(1/2); 18 means O(q^9)")
      ->required()
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
}

void add_output(CLI::App* cmd, Output& o) {
  cmd->add_flag("--json", o.json, "emit JSON");
  cmd->add_flag("--pretty", o.pretty, "emit a human-readable series");
}

void add_sum_flags(CLI::App* cmd, SumFlags& f) {
  add_order(cmd, f.order);
  cmd->add_option("--shell-window", f.shell_window, "empty shells required before stopping")->check(CLI::PositiveNumber);
  cmd->add_option("--max-radius", f.max_radius, "largest shell radius to visit")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", f.threads, "worker threads for the lattice sum");
}

nlohmann::json series_json(const QSeries& s) {
  nlohmann::json j;
  j["min_exp"] = s.min_exp().value;
  j["order"] = s.order().value;
  nlohmann::json c = nlohmann::json::array();
  for (const auto& x : s.coefficients()) c.push_back(x.get_str());
  j["coefficients"] = c;
  j["text"] = s.to_string();
  return j;
}

void print_series(std::ostream& out, const Output& o, const QSeries& s, const IndexResult* meta = nullptr) {
  if (o.json) {
    nlohmann::json j = series_json(s);
    if (meta) {
      j["radius"] = meta->radius;
      j["contributing"] = meta->contributing;
      j["termination"] = meta->termination;
    }
    out << j.dump() << "\n";
  } else {
    out << (o.pretty ? s.pretty() : s.to_string()) << "\n";
  }
}

// Accepts "M", "-M" or "M/2".
std::int64_t parse_twice(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return 2 * v;
    }
    if (text.substr(slash) != "/2") throw std::invalid_argument(text);
    std::string head = text.substr(0, slash);
    std::int64_t v = std::stoll(head, &used);
    if (used != head.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("-m", "expected an integer or a half-integer like 3/2, got '" + text + "'");
  }
}

ExponentVector single_monomial(const TorusElement& u) {
  if (u.terms().size() != 1 || !(u.terms().begin()->second == QSeries::one())) {
    throw Error(ErrorKind::InvalidArgument, "expected a single monomial with coefficient 1");
  }
  return u.terms().begin()->first;
}

struct Example {
  const char* name;
  std::string_view element;
  bool mirror;
  // Printed series is normal * I(element) with normal = sign * q^(shift/2).
  int sign;
  std::int64_t shift;
};

const Example kExamples[] = {
    {"fig8-kb", fixtures::kKbElement, false, -1, 1},
    {"fig8-kb-mirror", fixtures::kKbElement, true, -1, -1},
    {"fig8-kb2", fixtures::kKb2Element, false, 1, 0},
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact 3d-index of ideally triangulated cusped 3-manifolds", "index3d"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Output output;
  SumFlags sum;
  std::int64_t order = 0;

  std::int64_t m = 0, e = 0;
  auto* tet = app.add_subcommand("tet-index", "tetrahedron index I(m, e)");
  tet->add_option("m", m)->required();
  tet->add_option("e", e)->required();
  add_order(tet, order);
  add_output(tet, output);

  std::int64_t ja = 0, jb = 0, jc = 0;
  auto* jcmd = app.add_subcommand("j-index", "symmetric tetrahedron index J(a, b, c)");
  jcmd->add_option("a", ja)->required();
  jcmd->add_option("b", jb)->required();
  jcmd->add_option("c", jc)->required();
  add_order(jcmd, order);
  add_output(jcmd, output);

  std::string tri_path, element = "1";
  auto* idx = app.add_subcommand("index", "index of a quantum-torus element");
  idx->add_option("triangulation", tri_path)->required()->check(CLI::ExistingFile);
  idx->add_option("--element", element, "element in the expression language");
  add_sum_flags(idx, sum);
  add_output(idx, output);

  std::size_t cusp = 0;
  std::string m_text = "0";
  std::int64_t dgg_e = 0;
  auto* dgg = app.add_subcommand("dgg", "index of the peripheral monomial with charges (m, e)");
  dgg->add_option("triangulation", tri_path)->required()->check(CLI::ExistingFile);
  dgg->add_option("--cusp", cusp);
  dgg->add_option("-m", m_text, "magnetic charge, possibly a half-integer like 1/2");
  dgg->add_option("-e", dgg_e, "electric charge");
  add_sum_flags(dgg, sum);
  add_output(dgg, output);

  std::string monomial = "1";
  auto* rel = app.add_subcommand("check-relations", "check the edge, central and Lagrangian relations");
  rel->add_option("triangulation", tri_path)->required()->check(CLI::ExistingFile);
  rel->add_option("--monomial", monomial, "Weyl monomial in the expression language");
  add_sum_flags(rel, sum);

  std::string move_path;
  std::vector<std::string> elements;
  auto* pach = app.add_subcommand("pachner-check", "compare the index across a 3-2 or 2-0 move");
  pach->add_option("move", move_path)->required()->check(CLI::ExistingFile);
  pach->add_option("--element", elements, "extra sample over the source triangulation (repeatable)");
  add_sum_flags(pach, sum);

  auto* val = app.add_subcommand("validate", "check a triangulation file");
  val->add_option("triangulation", tri_path)->required()->check(CLI::ExistingFile);

  std::string example_name;
  auto* ex = app.add_subcommand("example", "bundled figure-eight computations");
  ex->add_option("name", example_name, "fig8-kb, fig8-kb-mirror or fig8-kb2")
      ->required()
      ->check(CLI::IsMember({"fig8-kb", "fig8-kb-mirror", "fig8-kb2"}));
  add_sum_flags(ex, sum);
  add_output(ex, output);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return 2;
  }

  try {
    if (*tet) {
      print_series(out, output, tet_index({m, e}, HalfExp(order)));
    } else if (*jcmd) {
      print_series(out, output, j_index({ja, jb, jc}, HalfExp(order)));
    } else if (*idx) {
      Triangulation tri = load_and_validate(tri_path);
      TorusElement u = parse_element(element, tri.num_tetrahedra);
      IndexResult r = index_element(tri, u, sum.options());
      print_series(out, output, r.series, &r);
    } else if (*dgg) {
      std::int64_t twice_m = 0;
      try {
        twice_m = parse_twice(m_text);
      } catch (const CLI::ValidationError& ex) {
        err << "usage error: " << ex.what() << "\n";
        return 2;
      }
      Triangulation tri = load_and_validate(tri_path);
      IndexResult r = dgg_index(tri, cusp, twice_m, dgg_e, sum.options());
      print_series(out, output, r.series, &r);
    } else if (*rel) {
      Triangulation tri = load_and_validate(tri_path);
      ExponentVector s0 = single_monomial(parse_element(monomial, tri.num_tetrahedra));
      RelationReport rep = check_quotient_relations(tri, s0, sum.options());
      out << rep.to_string();
      if (!rep.all_passed()) {
        err << "relation check failed\n";
        return 1;
      }
    } else if (*pach) {
      MoveDescriptor desc = read_move_descriptor(move_path);
      Triangulation source = load_and_validate(desc.source_path);
      Triangulation target = load_and_validate(desc.target_path);
      MoveMap map = build_move_map(desc, source.num_tetrahedra, target.num_tetrahedra);
      std::vector<TorusElement> samples{TorusElement::unit(source.num_tetrahedra)};
      for (const auto& text : elements) samples.push_back(parse_element(text, source.num_tetrahedra));
      CompatibilityReport rep = verify_index_compatibility(source, target, map, samples, sum.options());
      out << "omega preserved on all source generator pairs\n" << rep.to_string();
      if (!rep.all_passed()) {
        err << "index mismatch across the move\n";
        return 1;
      }
    } else if (*val) {
      Triangulation tri = read_triangulation(tri_path);
      ValidationReport rep = validate_report(tri);
      out << rep.to_string();
      validate(tri);
    } else if (*ex) {
      const Example* chosen = nullptr;
      for (const auto& x : kExamples) {
        if (example_name == x.name) chosen = &x;
      }
      Triangulation tri = fixtures::figure_eight();
      TorusElement u = parse_element(chosen->element, tri.num_tetrahedra);
      if (chosen->mirror) u = iota_element(u);
      SummationOptions opts = sum.options();
      opts.order = HalfExp(sum.order - chosen->shift);
      IndexResult r = index_element(tri, u, opts);
      r.series = r.series.shifted(HalfExp(chosen->shift)).scaled(chosen->sign);
      print_series(out, output, r.series, &r);
    }
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace index3d
