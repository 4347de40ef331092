#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "upsilon/acceptance.hpp"
#include "upsilon/continuation.hpp"
#include "upsilon/document.hpp"
#include "upsilon/families.hpp"
#include "upsilon/fundamental.hpp"

using namespace upsilon;
using nlohmann::json;

namespace {

struct Options {
  bool as_json = false;
  std::string input;
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read " + path);
  return read_all(f);
}

NetworkDocument load(const Options& o) {
  return parse_document(o.input.empty() || o.input == "-" ? read_all(std::cin) : read_file(o.input));
}

std::string factor_list(const ModuleDecomposition& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.invariant_factors.size(); ++i) s += (i ? ", " : "") + m.invariant_factors[i].get_str();
  return s + "]";
}

json module_json(const ModuleDecomposition& m) {
  json f = json::array();
  for (const auto& x : m.invariant_factors) f.push_back(x.get_str());
  return {{"free_rank", m.free_rank}, {"factors", f}, {"module", m.to_string()}};
}

json result(const std::string& command) { return {{"format", 1}, {"command", command}}; }

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.as_json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

Network restrict_network(const Network& n, const PartialGraph& g) {
  Network r;
  r.graph = g;
  r.ring = n.ring;
  for (EdgeKey k : g.edge_keys()) r.w[k] = n.weight(k);
  for (VertexId v : g.vertices()) r.d[v] = n.offset(v);
  return r;
}

std::set<VertexId> parse_id_list(const std::string& s) {
  std::set<VertexId> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad vertex id \"" + item + "\" in list \"" + s + "\"");
    out.insert(std::stoi(item));
  }
  return out;
}

std::string rat_row(const RatMatrix& a, std::size_t i) {
  std::string s;
  for (std::size_t j = 0; j < a.cols(); ++j) s += (j ? " " : "") + a(i, j).get_str();
  return s;
}

int cmd_upsilon(const Options& o) {
  Network n = load(o).network;
  auto r = upsilon::upsilon(n);
  json j = result("upsilon");
  j.update(module_json(r.decomposition));
  j["nondegenerate"] = r.nondegenerate;
  emit(o, j, r.decomposition.to_string() + "\nfree rank " + std::to_string(r.decomposition.free_rank) + "; factors " +
                 factor_list(r.decomposition) + "\n");
  return 0;
}

int cmd_crit(const Options& o) {
  Network n = load(o).network;
  auto m = critical_group(n.graph);
  json j = result("crit");
  j.update(module_json(m));
  emit(o, j, m.to_string() + "\ninvariant factors " + factor_list(m) + "\n");
  return 0;
}

int cmd_u0(const Options& o, const std::string& modulus, bool qz, bool generators) {
  Network n = load(o).network;
  if (qz == !modulus.empty()) throw ParseError("u0 needs exactly one of --mod N and --qz");
  json j = result("u0");
  std::string text;
  if (qz) {
    auto m = U0_QmodZ(n);
    j["coefficients"] = "Q/Z";
    j.update(module_json(m));
    text = m.to_string() + "\n";
  } else {
    Rat q = parse_rational(modulus);
    if (q.get_den() != 1 || q <= 1) throw ParseError("--mod needs an integer at least 2");
    Int mod = q.get_num();
    auto m = U0_mod_n(n, mod);
    j["coefficients"] = "Z/" + mod.get_str();
    j.update(module_json(m));
    text = m.to_string() + "\n";
    if (generators) {
      j["generators"] = json::array();
      for (const auto& [order, u] : U0_mod_n_generators(n, mod)) {
        json g = values_to_json(u);
        g["order"] = order.get_str();
        j["generators"].push_back(g);
        text += "order " + order.get_str() + ":";
        for (const auto& [v, x] : u.values) text += " " + std::to_string(v) + "=" + x.get_str();
        text += "\n";
      }
    }
  }
  emit(o, j, text);
  return 0;
}

int cmd_layerable(const Options& o, bool filtration) {
  PartialGraph g = load(o).network.graph;
  auto f = standard_form_filtration(g);
  json j = result("layerable");
  j["layerable"] = f.has_value();
  std::string text = f ? "layerable\n" : "not layerable\n";
  if (filtration && f) {
    j["stages"] = json::array();
    for (std::size_t k = 0; k < f->graphs.size(); ++k) {
      json st = {{"vertices", f->graphs[k].num_vertices()}, {"edges", f->graphs[k].num_edges()}, {"labelling", f->labellings[k]}};
      text += "G_" + std::to_string(k) + ": " + std::to_string(f->graphs[k].num_vertices()) + " vertices, " +
              std::to_string(f->graphs[k].num_edges()) + " edges, labels";
      for (VertexId v : f->labellings[k]) text += " " + std::to_string(v);
      if (k < f->ops.size()) {
        st["op_to_next"] = f->ops[k].to_string();
        text += "; next " + f->ops[k].to_string();
      }
      text += "\n";
      j["stages"].push_back(st);
    }
  }
  emit(o, j, text);
  return 0;
}

int cmd_flower(const Options& o) {
  Network n = load(o).network;
  FlowerResult r = reduce_to_flower(n.graph);
  json j = result("flower");
  j["empty"] = r.flower.empty();
  j["ops"] = json::array();
  std::string text;
  for (auto it = r.filtration.ops.rbegin(); it != r.filtration.ops.rend(); ++it) {
    j["ops"].push_back(it->to_string());
    text += "strip " + it->to_string() + "\n";
  }
  j["flower"] = document_to_json(make_document(restrict_network(n, r.flower)));
  if (r.flower.empty()) {
    text += "flower is empty (layerable)\n";
  } else {
    text += "flower: " + std::to_string(r.flower.num_vertices()) + " vertices, " + std::to_string(r.flower.num_edges()) +
            " edges\n";
    for (VertexId v : r.flower.vertices())
      text += "  vertex " + std::to_string(v) + (r.flower.is_boundary(v) ? " boundary\n" : " interior\n");
    for (EdgeKey k : r.flower.edge_keys()) {
      auto [a, b] = r.flower.endpoints(k);
      text += "  edge " + std::to_string(k) + ": " + std::to_string(a) + " - " + std::to_string(b) + "\n";
    }
  }
  emit(o, j, text);
  return 0;
}

int cmd_reduce(const Options& o) {
  PartialGraph g = load(o).network.graph;
  ReducibilityResult r = is_completely_reducible(g);
  json j = result("reduce");
  j["completely_reducible"] = r.completely_reducible;
  j["trace"] = trace_to_string(r.trace);
  j["irreducible_leaves"] = json::array();
  for (const auto& leaf : r.irreducible_leaves)
    j["irreducible_leaves"].push_back({{"vertices", leaf.vertices()}, {"edges", leaf.edge_keys()}});
  emit(o, j,
       std::string(r.completely_reducible ? "completely reducible\n" : "not completely reducible\n") + trace_to_string(r.trace));
  return 0;
}

int cmd_u0_matrix(const Options& o, const std::string& list) {
  Network n = load(o).network;
  std::set<VertexId> s = list.empty() ? find_layering_set(n.graph) : parse_id_list(list);
  U0Matrix a = u0_matrix_A(n, s);
  ModuleDecomposition m = kernel_QmodZ_torsion(to_integer(a.A));
  json j = result("u0-matrix");
  j["interiorized"] = a.s_order;
  j["rows"] = a.row_vertices;
  json rows = json::array();
  std::string text = "columns:";
  for (VertexId v : a.s_order) text += " " + n.graph.label(v);
  text += "\n";
  for (std::size_t i = 0; i < a.A.rows(); ++i) {
    json r = json::array();
    for (std::size_t c = 0; c < a.A.cols(); ++c) r.push_back(a.A(i, c).get_str());
    rows.push_back(r);
    text += n.graph.label(a.row_vertices[i]) + ": " + rat_row(a.A, i) + "\n";
  }
  j["A"] = rows;
  j.update(module_json(m));
  emit(o, j, text + "U0 = " + m.to_string() + "\n");
  return 0;
}

int cmd_dual(const Options& o) {
  NetworkDocument doc = load(o);
  if (!doc.embedding) throw PreconditionError("dual needs an embedding");
  DualNetwork d = dual(doc.network, *doc.embedding);
  std::cout << serialize_document(make_document(d.network, d.embedded));
  return 0;
}

int cmd_conjugate(const Options& o, const std::string& values_file) {
  NetworkDocument doc = load(o);
  if (!doc.embedding) throw PreconditionError("conjugate needs an embedding");
  VertexFunction u = parse_values(read_file(values_file), doc.network.ring);
  Conjugate c = harmonic_conjugate(doc.network, *doc.embedding, u);
  json j = result("conjugate");
  j["values"] = values_to_json(c.v)["values"];
  j["ring"] = c.v.ring.to_string();
  std::string text;
  for (const auto& [f, x] : c.v.values) text += "face " + std::to_string(f) + ": " + x.get_str() + "\n";
  emit(o, j, text);
  return 0;
}

int cmd_charpoly(const Options& o) {
  Network n = load(o).network;
  IntPoly p = laplacian_charpoly(n);
  json j = result("charpoly");
  json c = json::array();
  for (const auto& x : p) c.push_back(x.get_str());
  j["coefficients"] = c;
  j["polynomial"] = poly_to_string(p);
  emit(o, j, poly_to_string(p) + "\n");
  return 0;
}

int cmd_eigmult(const Options& o, const std::string& lambda) {
  Network n = load(o).network;
  Rat l = parse_rational(lambda);
  std::size_t k = eigen_multiplicity(n, l);
  json j = result("eigmult");
  j["lambda"] = l.get_str();
  j["multiplicity"] = k;
  emit(o, j, std::to_string(k) + "\n");
  return 0;
}

int cmd_family(const std::string& name, const std::vector<long>& params) {
  FamilyInstance f = make_family(name, params);
  NetworkDocument doc = make_document(std_network(f.graph), f.embedding);
  json p = json::array();
  for (long x : params) p.push_back(x);
  doc.metadata = {{"family", name}, {"params", p}};
  std::cout << serialize_document(doc);
  return 0;
}

int cmd_export_dot(const Options& o) {
  std::cout << to_dot(load(o).network);
  return 0;
}

int cmd_verify(const Options& o, const std::string& suite_name) {
  Suite suite = Suite::All;
  if (suite_name == "paper") suite = Suite::Paper;
  else if (suite_name == "property") suite = Suite::Property;
  else if (suite_name != "all") throw ParseError("unknown suite \"" + suite_name + "\"");
  auto results = run_acceptance(suite);
  bool ok = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
  json j = result("verify");
  j["suite"] = suite_name;
  j["passed"] = ok;
  j["criteria"] = json::array();
  for (const auto& r : results)
    j["criteria"].push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
  emit(o, j, format_results(results));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of graphs with boundary under generalized Laplacians"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.as_json, "Machine-readable output");
  app.add_option("-i,--input", o.input, "Network document (default: standard input)");

  std::string modulus, interiorize, values_file, lambda, suite = "all", family_name;
  bool qz = false, generators = false, filtration = false;
  std::vector<long> family_params;

  auto* up = app.add_subcommand("upsilon", "Fundamental module: free rank and invariant factors");
  auto* crit = app.add_subcommand("crit", "Critical group of the underlying graph");
  auto* u0 = app.add_subcommand("u0", "Harmonic functions with zero boundary data");
  u0->add_option("--mod", modulus, "Coefficients Z/N");
  u0->add_flag("--qz", qz, "Coefficients Q/Z");
  u0->add_flag("--generators", generators, "List cyclic generators (with --mod)");
  auto* lay = app.add_subcommand("layerable", "Decide layerability");
  lay->add_flag("--filtration", filtration, "Print a standard-form filtration");
  auto* flower = app.add_subcommand("flower", "Strip to the flower");
  auto* reduce = app.add_subcommand("reduce", "Complete reducibility trace");
  auto* u0m = app.add_subcommand("u0-matrix", "Matrix A from harmonic continuation and its kernel");
  u0m->add_option("--interiorize", interiorize, "Comma-separated interior vertices made boundary");
  auto* dual_cmd = app.add_subcommand("dual", "Circular planar dual (needs an embedding)");
  auto* conj = app.add_subcommand("conjugate", "Harmonic conjugate on the dual");
  conj->add_option("--values", values_file, "Values document for u")->required();
  auto* cp = app.add_subcommand("charpoly", "Characteristic polynomial of L");
  auto* em = app.add_subcommand("eigmult", "Multiplicity of an eigenvalue of L");
  em->add_option("--lambda", lambda, "Eigenvalue p/q")->required();
  auto* fam = app.add_subcommand("family", "Emit a named graph family as a network document");
  fam->add_option("name", family_name, "One of: " + [] {
    std::string s;
    for (const auto& n : family_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }())->required();
  fam->add_option("params", family_params, "Integer parameters");
  auto* dot = app.add_subcommand("export-dot", "DOT drawing");
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--suite", suite, "paper, property or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*up) return cmd_upsilon(o);
    if (*crit) return cmd_crit(o);
    if (*u0) return cmd_u0(o, modulus, qz, generators);
    if (*lay) return cmd_layerable(o, filtration);
    if (*flower) return cmd_flower(o);
    if (*reduce) return cmd_reduce(o);
    if (*u0m) return cmd_u0_matrix(o, interiorize);
    if (*dual_cmd) return cmd_dual(o);
    if (*conj) return cmd_conjugate(o, values_file);
    if (*cp) return cmd_charpoly(o);
    if (*em) return cmd_eigmult(o, lambda);
    if (*fam) return cmd_family(family_name, family_params);
    if (*dot) return cmd_export_dot(o);
    if (*verify) return cmd_verify(o, suite);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
