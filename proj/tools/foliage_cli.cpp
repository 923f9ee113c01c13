#include "foliage/dieudonne.hpp"
#include "foliage/eo_strata.hpp"
#include "foliage/errors.hpp"
#include "foliage/newton_polygon.hpp"
#include "foliage/polarization.hpp"
#include "foliage/strata.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using json = nlohmann::json;
using namespace foliage;

namespace {

struct RunConfig {
  std::int64_t p = 2;
  int bound = kDefaultHeightBound;
  int depth = kDefaultSearchDepth;
  std::string format;
  std::string out;
};

json rational_json(const Rational& q) {
  if (is_integral(q)) return json(static_cast<long long>(numerator(q)));
  return json(to_string(q));
}

json polygon_json(const NewtonPolygon& np) {
  json parts = json::array();
  for (const auto& [pair, r] : np.parts()) parts.push_back({pair.m(), pair.n(), r});
  return parts;
}

json es_json(const ElementarySequence& es) { return json(es.values()); }

json record_json(const StrataRecord& rec) {
  return {{"xi", to_table_string(rec.xi)}, {"f", rec.f},   {"sdim", rec.sdim},
          {"c", rec.c},                    {"i", rec.i},   {"es", es_json(rec.es)},
          {"conjectured_max_total_dim", rec.conjectured_max_total_dim}};
}

std::string format_or(const RunConfig& cfg, const std::string& fallback) {
  return cfg.format.empty() ? fallback : cfg.format;
}

[[noreturn]] void unsupported(const std::string& command, const std::string& format) {
  throw Error(Errc::ParseError, "command '" + command + "' does not support --format " + format);
}

std::size_t display_width(const std::string& cell) {
  return static_cast<std::size_t>(
      std::count_if(cell.begin(), cell.end(), [](char ch) { return (static_cast<unsigned char>(ch) & 0xC0) != 0x80; }));
}

std::string pad(const std::string& cell, std::size_t width) {
  const std::size_t used = display_width(cell);
  return used >= width ? cell : cell + std::string(width - used, ' ');
}

std::string text_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t k = 0; k < row.size(); ++k) widths[k] = std::max(widths[k], display_width(row[k]));
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t k = 0; k < row.size(); ++k) {
      line += k + 1 == row.size() ? row[k] : pad(row[k], widths[k] + 2);
    }
    out += line + "\n";
  }
  return out;
}

std::string cmd_table(const RunConfig& cfg, int g) {
  const auto table = strata_table(g, cfg.bound, cfg.p);
  const std::string format = format_or(cfg, "json");
  if (format == "json") {
    json rows = json::array();
    for (const auto& rec : table) rows.push_back(record_json(rec));
    return rows.dump() + "\n";
  }
  if (format == "csv") {
    std::string out = "xi,f,sdim,c,i,es,conjectured_max_total_dim\n";
    for (const auto& rec : table) {
      out += "\"" + to_table_string(rec.xi) + "\"," + std::to_string(rec.f) + "," + std::to_string(rec.sdim) + "," +
             std::to_string(rec.c) + "," + std::to_string(rec.i) + ",\"" + to_string(rec.es) + "\"," +
             std::to_string(rec.conjectured_max_total_dim) + "\n";
    }
    return out;
  }
  if (format == "text") {
    std::vector<std::vector<std::string>> rows{{"NP", "ξ", "f", "sdim(ξ)", "c(ξ)", "i(ξ)", "ES(H(ξ))"}};
    for (const auto& rec : table) {
      rows.push_back({np_label(rec.xi), to_table_string(rec.xi), std::to_string(rec.f), std::to_string(rec.sdim),
                      std::to_string(rec.c), std::to_string(rec.i), to_string(rec.es)});
    }
    return text_table(rows);
  }
  unsupported("table", format);
}

std::vector<NewtonPolygon> polygons_for(const RunConfig& cfg, std::optional<int> g, std::optional<int> d,
                                        std::optional<int> c) {
  if (g) {
    std::vector<NewtonPolygon> out;
    for (const auto& rec : strata_table(*g, cfg.bound, cfg.p)) out.push_back(rec.xi);
    return out;
  }
  if (!d || !c) throw Error(Errc::ParseError, "give either --g or both --d and --c");
  return enumerate(*d, *c, cfg.bound);
}

std::string cmd_hasse(const RunConfig& cfg, std::optional<int> g, std::optional<int> d, std::optional<int> c) {
  const auto polygons = polygons_for(cfg, g, d, c);
  const auto covers = hasse_diagram(polygons);
  const std::string format = format_or(cfg, "dot");
  if (format == "dot") {
    std::ostringstream out;
    out << "digraph hasse {\n";
    for (std::size_t k = 0; k < polygons.size(); ++k) {
      std::string label = to_string(polygons[k]);
      if (polygons[k].is_symmetric()) {
        const auto rec = strata_record(polygons[k], cfg.p);
        label += "\\nf=" + std::to_string(rec.f) + " sdim=" + std::to_string(rec.sdim) +
                 " c=" + std::to_string(rec.c) + " i=" + std::to_string(rec.i);
      }
      out << "  n" << k << " [label=\"" << label << "\"];\n";
    }
    for (const auto& [lower, upper] : covers) out << "  n" << upper << " -> n" << lower << ";\n";
    out << "}\n";
    return out.str();
  }
  if (format == "json") {
    json nodes = json::array();
    for (const auto& np : polygons) nodes.push_back(to_string(np));
    json edges = json::array();
    for (const auto& [lower, upper] : covers) edges.push_back({upper, lower});
    return json{{"nodes", nodes}, {"covers", edges}}.dump() + "\n";
  }
  unsupported("hasse", format);
}

std::string cmd_enumerate(const RunConfig& cfg, std::optional<int> g, std::optional<int> d, std::optional<int> c) {
  std::vector<NewtonPolygon> polygons;
  if (g) {
    polygons = enumerate_symmetric(*g, cfg.bound);
  } else {
    polygons = polygons_for(cfg, g, d, c);
  }
  const std::string format = format_or(cfg, "json");
  if (format == "json") {
    json list = json::array();
    for (const auto& np : polygons) list.push_back(to_string(np));
    return json{{"polygons", list}}.dump() + "\n";
  }
  if (format == "text" || format == "csv") {
    std::string out = format == "csv" ? "xi\n" : "";
    for (const auto& np : polygons) out += (format == "csv" ? "\"" + to_string(np) + "\"" : to_string(np)) + "\n";
    return out;
  }
  unsupported("enumerate", format);
}

json matrix_json(const ModMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json module_json(const TruncatedDieudonneModule& m) {
  return {{"p", m.prime()},
          {"a", m.level()},
          {"h", m.rank()},
          {"F", matrix_json(m.frobenius())},
          {"V", matrix_json(m.verschiebung())},
          {"label", to_table_string(m.label())}};
}

std::string cmd_invariants(const RunConfig& cfg, const std::string& text) {
  const auto xi = parse_polygon(text);
  json slopes = json::array();
  for (const auto& s : xi.slopes()) slopes.push_back(rational_json(s));
  json out{{"xi", to_string(xi)},
           {"parts", polygon_json(xi)},
           {"height", xi.height()},
           {"dimension", xi.dimension()},
           {"codimension", xi.codimension()},
           {"p_rank", xi.p_rank()},
           {"slopes", slopes},
           {"symmetric", xi.is_symmetric()},
           {"cu", cu(xi)},
           {"module", module_json(minimal_module(xi, 1, cfg.p))}};
  if (xi.is_symmetric()) {
    const auto rec = strata_record(xi, cfg.p);
    out["f"] = rec.f;
    out["sdim"] = rec.sdim;
    out["c"] = rec.c;
    out["i"] = rec.i;
    out["es"] = es_json(rec.es);
    out["conjectured_max_total_dim"] = rec.conjectured_max_total_dim;
    out["a_number"] = a_number(minimal_module(xi, 1, cfg.p));
  }
  const std::string format = format_or(cfg, "json");
  if (format != "json") unsupported("invariants", format);
  return out.dump() + "\n";
}

std::string cmd_es(const RunConfig& cfg, const std::string& text) {
  const auto es = elementary_sequence(bt1_of_xi(parse_polygon(text), cfg.p));
  const std::string format = format_or(cfg, "json");
  if (format == "json") return json{{"es", es_json(es)}}.dump() + "\n";
  if (format == "text") return to_string(es) + "\n";
  unsupported("es", format);
}

std::string cmd_homstab(const RunConfig& cfg, const std::string& xi_text, const std::string& pair_text, int n,
                        int nmax) {
  NewtonPolygon beta;
  if (!xi_text.empty() && !pair_text.empty()) throw Error(Errc::ParseError, "give only one of --xi and --pair");
  if (!xi_text.empty()) {
    beta = parse_polygon(xi_text);
  } else if (!pair_text.empty()) {
    beta = parse_polygon("(" + pair_text + ")");
  } else {
    throw Error(Errc::ParseError, "give --xi or --pair");
  }
  const auto chain = restriction_image_chain(beta, cfg.p, n, nmax);
  const std::string format = format_or(cfg, "json");
  if (format == "json") return json{{"stabilization_index", chain.stabilization_index}}.dump() + "\n";
  if (format == "text") {
    const PrimePowerRing ring(cfg.p, n);
    std::string out;
    for (std::size_t k = 0; k < chain.images.size(); ++k) {
      out += "N=" + std::to_string(n + static_cast<int>(k)) +
             " image order p^" + std::to_string(span_order_exponent(ring, chain.images[k])) + "\n";
    }
    return out + "stabilization_index " + std::to_string(chain.stabilization_index) + "\n";
  }
  unsupported("homstab", format);
}

std::string cmd_polforms(const RunConfig& cfg, const std::string& text, int e) {
  const auto xi = parse_polygon(text);
  const std::string format = format_or(cfg, "json");
  if (format == "dot") {
    std::vector<QuasiPolarizationForm> forms;
    for (int k = 0; k <= e; k += 2) {
      for (auto& form : enumerate_forms(xi, k)) forms.push_back(std::move(form));
    }
    return move_graph_dot(forms);
  }
  const auto forms = enumerate_forms(xi, e);
  if (format == "json") {
    json list = json::array();
    for (const auto& form : forms) list.push_back(to_string(form));
    return json{{"forms", list}}.dump() + "\n";
  }
  if (format == "text") {
    std::string out;
    for (const auto& form : forms) out += to_string(form) + "\n";
    return out;
  }
  unsupported("polforms", format);
}

RationalMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw Error(Errc::ParseError, "matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(doc.size());
  const auto cols = static_cast<Eigen::Index>(doc.front().is_array() ? doc.front().size() : 0);
  RationalMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = doc[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(Errc::ParseError, "matrix rows must be arrays of equal length");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (cell.is_number_integer()) {
        m(i, j) = Rational(cell.get<long long>());
      } else if (cell.is_string()) {
        m(i, j) = parse_rational(cell.get<std::string>());
      } else {
        throw Error(Errc::ParseError, "matrix entries must be integers or \"a/b\" strings");
      }
    }
  }
  return m;
}

std::string cmd_frobnp(const RunConfig& cfg, const std::string& path) {
  const auto np = frobenius_newton_polygon(read_matrix(path), cfg.p);
  json slopes = json::array();
  for (const auto& s : np.slopes()) slopes.push_back(rational_json(s));
  const std::string format = format_or(cfg, "json");
  if (format == "json") return json{{"xi", to_string(np)}, {"parts", polygon_json(np)}, {"slopes", slopes}}.dump() + "\n";
  if (format == "text") return to_string(np) + "\n";
  unsupported("frobnp", format);
}

std::string cmd_common_source(const RunConfig& cfg, const std::string& first, const std::string& second) {
  const auto result = common_source(parse_form(first), parse_form(second), cfg.depth);
  auto moves = [](const std::vector<IsogenyMove>& path) {
    json list = json::array();
    for (auto move : path) list.push_back(std::string(to_string(move)));
    return list;
  };
  const std::string format = format_or(cfg, "json");
  if (format == "json") {
    return json{{"source", to_string(result.source)},
                {"path_to_first", moves(result.path_to_first)},
                {"path_to_second", moves(result.path_to_second)}}
               .dump() +
           "\n";
  }
  unsupported("common-source", format);
}

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw Error(Errc::ParseError, "cannot write " + cfg.out);
  file << payload;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton polygon strata, leaves, EO sequences and quasi-polarizations"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--p", cfg.p, "prime")->capture_default_str();
  app.add_option("--format", cfg.format, "json | csv | dot | text")
      ->check(CLI::IsMember({"json", "csv", "dot", "text"}));
  app.add_option("--out", cfg.out, "write to this file instead of stdout");
  app.add_option("--bound", cfg.bound, "height bound for enumeration")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--depth", cfg.depth, "search depth for common-source")->check(CLI::PositiveNumber)->capture_default_str();

  std::function<std::string()> run;

  int g = 0;
  auto* table = app.add_subcommand("table", "dimension table of the symmetric strata");
  table->add_option("--g", g, "genus")->required();
  table->callback([&] { run = [&] { return cmd_table(cfg, g); }; });

  std::optional<int> opt_g, opt_d, opt_c;
  auto add_shape = [&](CLI::App* sub) {
    auto* og = sub->add_option("--g", opt_g, "symmetric polygons of height 2g");
    auto* od = sub->add_option("--d", opt_d, "dimension");
    auto* oc = sub->add_option("--c", opt_c, "codimension");
    og->excludes(od)->excludes(oc);
  };
  auto* hasse = app.add_subcommand("hasse", "covering relations of the polygon order");
  add_shape(hasse);
  hasse->callback([&] { run = [&] { return cmd_hasse(cfg, opt_g, opt_d, opt_c); }; });

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list Newton polygons");
  add_shape(enumerate_cmd);
  enumerate_cmd->callback([&] { run = [&] { return cmd_enumerate(cfg, opt_g, opt_d, opt_c); }; });

  std::string xi_text;
  auto* invariants = app.add_subcommand("invariants", "numerical invariants of a polygon");
  invariants->add_option("xi", xi_text, "polygon, e.g. \"(2,1)+(1,1)+(1,2)\"")->required();
  invariants->callback([&] { run = [&] { return cmd_invariants(cfg, xi_text); }; });

  auto* es = app.add_subcommand("es", "elementary sequence of H(xi)[p]");
  es->add_option("xi", xi_text, "symmetric polygon")->required();
  es->callback([&] { run = [&] { return cmd_es(cfg, xi_text); }; });

  std::string pair_text;
  int n = 1;
  int nmax = 4;
  auto* homstab = app.add_subcommand("homstab", "stabilization of End(H(beta) mod p^N) mod p^n");
  homstab->add_option("--xi", xi_text, "polygon beta");
  homstab->add_option("--pair", pair_text, "single pair m,n");
  homstab->add_option("--n", n, "target level")->capture_default_str();
  homstab->add_option("--nmax", nmax, "largest source level")->capture_default_str();
  homstab->callback([&] { run = [&] { return cmd_homstab(cfg, xi_text, pair_text, n, nmax); }; });

  int e = 0;
  auto* polforms = app.add_subcommand("polforms", "normal forms of quasi-polarizations of degree p^e");
  polforms->add_option("xi", xi_text, "symmetric polygon")->required();
  polforms->add_option("--e", e, "degree exponent")->required();
  polforms->callback([&] { run = [&] { return cmd_polforms(cfg, xi_text, e); }; });

  std::string matrix_path;
  auto* frobnp = app.add_subcommand("frobnp", "Newton polygon of a Frobenius matrix");
  frobnp->add_option("matrix", matrix_path, "JSON file: array of rows of integers or \"a/b\"")->required();
  frobnp->callback([&] { run = [&] { return cmd_frobnp(cfg, matrix_path); }; });

  std::string first, second;
  auto* common = app.add_subcommand("common-source", "common isogeny source of two forms");
  common->add_option("first", first, "form, e.g. \"ss:[I(0),I(0)];parts:[]\"")->required();
  common->add_option("second", second, "form")->required();
  common->callback([&] { run = [&] { return cmd_common_source(cfg, first, second); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int status = app.exit(err);
    return status == 0 ? 0 : 1;
  }

  try {
    emit(cfg, run());
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_status(err.code());
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 3;
  }
  return 0;
}
