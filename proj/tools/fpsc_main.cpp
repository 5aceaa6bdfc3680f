#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fpsc/errors.hpp"
#include "fpsc/pieces.hpp"
#include "fpsc/pipeline.hpp"
#include "fpsc/presentation.hpp"
#include "fpsc/pride.hpp"
#include "fpsc/report_json.hpp"
#include "fpsc/wallspace.hpp"
#include "fpsc/word.hpp"

namespace {

using namespace fpsc;

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  check_input(out.good(), "cannot open output file " + output);
  out << text;
  check_input(out.good(), "failed writing " + output);
}

void check_n(int n) { check_input(n >= 2, "n must be >= 2, got " + std::to_string(n)); }

void check_format(const std::string& format) {
  check_input(format == "json" || format == "text",
              "format must be json or text, got " + format);
}

int cmd_check(const std::string& file, int n, bool classical, const std::string& format,
              const std::string& output, bool timestamp) {
  check_n(n);
  check_format(format);
  Presentation p = load_presentation_file(file);
  StarReport rep = classical ? check_classical_cprime(p, n) : check_cstar(p, n);
  emit(format == "json" ? star_report_json(rep, p, timestamp) : star_report_text(rep), output);
  return rep.passed ? 0 : 1;
}

Presentation grid_presentation(int m) {
  check_input(m >= 1, "grid parameter m must be >= 1");
  Presentation p;
  p.factors.push_back({"A", FactorKind::FreeAbelian, 2, {"a", "b"}});
  p.factors.push_back({"C", FactorKind::FreeAbelian, 2, {"c", "d"}});
  std::vector<Syllable> raw;
  for (int i = 1; i <= m; ++i) {
    raw.push_back({0, FactorElement::from_exps({i, 0})});
    raw.push_back({1, FactorElement::from_exps({i, 0})});
  }
  p.relators.push_back(cyclic_reduce(normalize(raw, p.factors)));
  p.validate();
  return p;
}

int cmd_gen_pride(const std::string& mode, int n, int m, const std::string& output,
                  bool timestamp) {
  check_n(n);
  Presentation p;
  StarReport selfcheck;
  if (mode == "remark") {
    p.factors.push_back({"X", FactorKind::Free, 1, {"x"}});
    p.factors.push_back({"Y", FactorKind::Free, 1, {"y"}});
    p.relators = gen_pride_relators(p.factors, "x", "y", gen_remark_params(n));
    p.validate();
    selfcheck = check_classical_cprime(p, n);
  } else if (mode == "corollary") {
    std::vector<FactorDescriptor> factors = {
        {"A", FactorKind::FreeAbelian, 2, {"a", "b"}},
        {"C", FactorKind::FreeAbelian, 2, {"c", "d"}},
    };
    p = gen_corollary_presentation(factors, n);
    selfcheck = check_cstar(p, n);
  } else if (mode == "grid") {
    p = grid_presentation(m);
    selfcheck = check_cstar(p, n);
  } else {
    throw input_error("mode must be remark, corollary, or grid, got " + mode);
  }
  check_internal(selfcheck.passed, "generated presentation failed its self-check at 1/" +
                                       std::to_string(n) + " (mode " + mode + ")");
  std::ostringstream os;
  os << "# fpsc gen-pride mode=" << mode << " n=" << n;
  if (mode == "grid") os << " m=" << m;
  os << "\n";
  if (timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << buf << "\n";
  }
  os << write_presentation(p);
  emit(os.str(), output);
  return 0;
}

int cmd_build(const std::string& file, int n, long long q, const std::string& format,
              const std::string& output, bool timestamp) {
  check_n(n);
  check_format(format);
  Presentation p = load_presentation_file(file);
  BuildReport rep = run_build(p, n, q);
  emit(format == "json" ? build_report_json(rep, timestamp) : build_report_text(rep), output);
  return rep.ok ? 0 : 1;
}

int cmd_dual(const std::string& file, int n, long long q, const std::string& format,
             const std::string& output, bool timestamp) {
  check_n(n);
  check_format(format);
  Presentation p = load_presentation_file(file);
  StarReport star = check_cstar(p, n);
  check_input(star.passed, "dual requires the presentation to satisfy C'_*(1/" +
                               std::to_string(n) + "); worst piece ratio is " +
                               std::to_string(star.worst_num) + "/" +
                               std::to_string(star.worst_den));
  const long long q_used = q > 0 ? q : choose_subdivision(p, n);
  CubicalPresentation xs = build_cubical_presentation(p, q_used);

  std::vector<DualSummary> ds;
  for (size_t i = 0; i < xs.cones.size(); ++i) {
    const ConeInfo& cone = xs.cones[i];
    DualSummary d;
    d.relator = (int)i;
    d.circle_length = cone.sys;
    if (!cone.materialized) {
      if (cone.sys % 2 == 0) d.wall_count = cone.sys / 2;
      if (cone.stats.letters % 2 == 0) d.letter_wall_count = cone.stats.letters / 2;
      d.note = "cone kept structural (cell cap); dual not built";
    } else if (cone.sys % 2 != 0) {
      d.note = "odd circle; no antipodal wall structure";
    } else {
      AntipodalWallStructure W = antipodal_walls(cone.necklace);
      d.wall_count = (long long)W.walls.size();
      if (cone.stats.letters % 2 == 0) {
        d.letter_wall_count = (long long)antipodal_walls(cone.necklace, true).walls.size();
      }
      if (d.wall_count <= 20) {
        FiniteWallspace FW = restrict_wallspace(cone.necklace, W);
        DualCubeComplex D = dual_cube_complex(FW);
        d.dualized = true;
        d.vertices = (long long)D.vertices.size();
        d.edge_count = (long long)D.edges.size();
        d.dimension = D.dimension;
        d.connected = D.connected;
        if (D.vertices.size() <= 600) {
          d.median_ok = median_check(D);
        } else {
          d.note = "median check skipped above 600 0-cubes";
        }
      } else {
        d.note = "wall count above the 20-wall dual cap";
      }
    }
    ds.push_back(d);
  }
  if (format == "json") {
    emit(dual_summaries_json(ds, q_used, timestamp), output);
  } else {
    std::ostringstream os;
    os << "dual report at q=" << q_used << "\n";
    for (const auto& d : ds) {
      os << "cone " << d.relator << ": |w|=" << d.circle_length << " walls=" << d.wall_count
         << " letter-walls=" << d.letter_wall_count;
      if (d.dualized) {
        os << "  dual: " << d.vertices << " vertices, " << d.edge_count
           << " edges, dimension " << d.dimension << ", median "
           << (d.median_ok ? "ok" : "FAIL");
      }
      if (!d.note.empty()) os << "  (" << d.note << ")";
      os << "\n";
    }
    emit(os.str(), output);
  }
  return 0;
}

int cmd_report(const std::string& file, const std::string& format, const std::string& output) {
  check_input(format == "json" || format == "text" || format == "dot",
              "format must be json, text, or dot, got " + format);
  std::ifstream in(file);
  check_input(in.good(), "cannot open " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::istringstream peek(text);
  std::string header;
  // First non-comment token names the artifact type.
  std::string line;
  while (std::getline(peek, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ls >> header;
    break;
  }
  std::ostringstream os;
  if (header == "fpsc-presentation") {
    check_input(format != "dot", "presentations have no dot rendering");
    Presentation p = parse_presentation_string(text);
    if (format == "json") {
      emit(presentation_summary_json(p), output);
      return 0;
    }
    os << "presentation: " << p.factors.size() << " factors, " << p.relators.size()
       << " relators\n";
    for (size_t i = 0; i < p.relators.size(); ++i) {
      os << "  relator " << i << ": " << p.relators[i].syllable_length() << " syllables, "
         << p.relators[i].letter_length() << " letters\n";
    }
  } else if (header == "fpsc-complex") {
    CubeComplex C = parse_cube_complex_string(text);
    if (format == "dot") {
      emit(dot_1skeleton(C), output);
      return 0;
    }
    auto hyps = hyperplanes(C);
    if (format == "json") {
      emit(complex_summary_json(C, (long long)hyps.size()), output);
      return 0;
    }
    os << "complex: " << C.num_vertices << " vertices, " << C.edges.size() << " edges, "
       << C.squares.size() << " squares, " << hyps.size() << " hyperplanes\n";
  } else if (header == "fpsc-wallspace") {
    FiniteWallspace W = parse_wallspace_string(text);
    if (format == "dot") {
      emit(dot_crossing_graph(W), output);
      return 0;
    }
    auto g = crossing_graph(W);
    int crossings = 0;
    for (size_t a = 0; a < W.walls.size(); ++a) {
      for (size_t b = a + 1; b < W.walls.size(); ++b) crossings += g[a][b] ? 1 : 0;
    }
    if (format == "json") {
      emit(wallspace_summary_json(W, crossings), output);
      return 0;
    }
    os << "wallspace: " << W.num_points << " points, " << W.walls.size() << " walls, "
       << crossings << " crossing pairs\n";
  } else {
    throw input_error("unrecognized artifact header '" + header + "' in " + file);
  }
  emit(os.str(), output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free-product small-cancellation and cubulation toolkit"};
  app.require_subcommand(1);

  std::string file, output, format = "json", mode = "remark";
  int n = 20, m = 21;
  long long q = 0;
  bool no_timestamp = false;
  std::function<int()> action;

  auto add_common = [&](CLI::App* cmd, bool with_file) {
    if (with_file) cmd->add_option("file", file, "presentation file")->required();
    cmd->add_option("--format", format, "json or text");
    cmd->add_option("--output", output, "write the report here instead of stdout");
    cmd->add_flag("--no-timestamp", no_timestamp, "omit the generated-at field");
  };

  auto* star = app.add_subcommand("check-star", "syllable-metric small-cancellation check");
  add_common(star, true);
  star->add_option("--n", n, "denominator of the piece bound")->required();
  star->callback([&] { action = [&] { return cmd_check(file, n, false, format, output, !no_timestamp); }; });

  auto* classical = app.add_subcommand("check-classical", "letter-metric check for free groups");
  add_common(classical, true);
  classical->add_option("--n", n, "denominator of the piece bound")->required();
  classical->callback([&] { action = [&] { return cmd_check(file, n, true, format, output, !no_timestamp); }; });

  auto* gen = app.add_subcommand("gen-pride", "emit a deterministic six-relator presentation");
  gen->add_option("--mode", mode, "remark, corollary, or grid");
  gen->add_option("--n", n, "family parameter")->required();
  gen->add_option("--m", m, "grid size for mode=grid");
  gen->add_option("--output", output, "write the presentation here instead of stdout");
  gen->add_flag("--no-timestamp", no_timestamp, "omit the generated-at comment");
  gen->callback([&] { action = [&] { return cmd_gen_pride(mode, n, m, output, !no_timestamp); }; });

  auto* build = app.add_subcommand("build", "choose q, build the cubical presentation, run all checks");
  add_common(build, true);
  build->add_option("--n", n, "small-cancellation denominator")->required();
  build->add_option("--q", q, "override the chosen subdivision");
  build->callback([&] { action = [&] { return cmd_build(file, n, q, format, output, !no_timestamp); }; });

  auto* dual = app.add_subcommand("dual", "dual cube complexes of the cones' wallspaces");
  add_common(dual, true);
  dual->add_option("--n", n, "small-cancellation denominator")->required();
  dual->add_option("--q", q, "override the chosen subdivision");
  dual->callback([&] { action = [&] { return cmd_dual(file, n, q, format, output, !no_timestamp); }; });

  auto* report = app.add_subcommand("report", "summarize a stored artifact file");
  report->add_option("file", file, "presentation, complex, or wallspace file")->required();
  report->add_option("--format", format, "json, text, or dot");
  report->add_option("--output", output, "write here instead of stdout");
  report->callback([&] { action = [&] { return cmd_report(file, format, output); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return action();
  } catch (const fpsc::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fpsc::resource_error& e) {
    std::cerr << "error (resource cap): " << e.what() << "\n";
    return 2;
  } catch (const fpsc::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
