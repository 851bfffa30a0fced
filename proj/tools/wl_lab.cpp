#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wl/algebra.hpp"
#include "wl/bounds.hpp"
#include "wl/census.hpp"
#include "wl/critical.hpp"
#include "wl/patterns.hpp"

using json = nlohmann::ordered_json;
using namespace wl;

namespace {

struct Options {
  bool json = false;
  std::uint64_t seed = 1;
  int threads = 0;
};

// Usage and input problems: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool is_edge_list(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  return ext == ".edges" || ext == ".txt";
}

ColoredDigraph load(const std::string& path) {
  auto text = read_text(path);
  return is_edge_list(path) ? to_digraph(parse_edge_list(text)) : parse_graph(text);
}

// Undirected graph and vertex colors of a file whose arcs are all "edge" or
// "nonarc".
SimpleGraph load_simple(const std::string& path, std::vector<int>* colors = nullptr) {
  auto text = read_text(path);
  if (is_edge_list(path)) return parse_edge_list(text);
  auto g = parse_graph(text);
  SimpleGraph s(g.n());
  std::vector<int> vc(g.n());
  for (int u = 0; u < g.n(); ++u) {
    vc[u] = g.at(u, u);
    for (int v = 0; v < g.n(); ++v) {
      if (u == v) continue;
      auto name = g.name(g.at(u, v));
      if (name == "edge") {
        if (u < v) s.add_edge(u, v);
      } else if (name != "nonarc") {
        throw UsageError(path + ": expected an undirected graph (edge lines only)");
      }
    }
  }
  bool colored = std::any_of(vc.begin(), vc.end(), [](int x) { return x != 0; });
  if (colors) *colors = colored ? vc : std::vector<int>{};
  return s;
}

std::string join(const std::vector<int>& xs, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

json matrix(const ColoredDigraph& g) {
  json rows = json::array();
  for (int u = 0; u < g.n(); ++u) {
    json row = json::array();
    for (int v = 0; v < g.n(); ++v) row.push_back(g.at(u, v));
    rows.push_back(row);
  }
  return rows;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

void emit(const Options& o, const json& payload, const std::string& text) {
  if (o.json) std::cout << payload.dump(2) << '\n';
  else std::cout << text;
}

CoherentConfiguration closed(const std::string& path) {
  auto c = coherent_closure(load(path));
  auto rep = verify_coherence(c.base());
  if (!rep.ok()) {
    std::ostringstream w;
    w << "closure is not coherent";
    if (rep.witness)
      w << ": c^{" << rep.witness->a << "," << rep.witness->b << "}_" << rep.witness->t << " is " << rep.witness->count1
        << " at (" << rep.witness->arc1.first << "," << rep.witness->arc1.second << ") and " << rep.witness->count2
        << " at (" << rep.witness->arc2.first << "," << rep.witness->arc2.second << ")";
    throw IntegrityError(w.str());
  }
  return c;
}

// ---------------------------------------------------------------------------

int cmd_closure(const Options& o, const std::string& file, const std::string& out) {
  auto c = closed(file);
  std::ostringstream t;
  t << "# rank " << c.rank() << " fibers " << c.fiber_count() << '\n' << serialize(c.base());
  if (!out.empty()) write_file(out, t.str());
  json p = {{"n", c.n()}, {"rank", c.rank()}, {"fibers", c.fibers()}, {"colors", matrix(c.base())}};
  emit(o, p, t.str());
  std::cerr << "closure: n=" << c.n() << " rank=" << c.rank() << " fibers=" << c.fiber_count() << '\n';
  return 0;
}

int cmd_kwl(const Options& o, const std::string& file, int k) {
  auto g = load(file);
  auto s = wl_refine(g, k);
  std::ostringstream t;
  t << "# rounds " << s.rounds << '\n' << "# colors " << s.num_colors << '\n';
  if (k == 2) {
    t << serialize(s.arcs());
  } else if (k == 1) {
    for (int v = 0; v < s.n; ++v) t << v << '\t' << s.colors[v] << '\n';
  }
  json p = {{"k", s.k}, {"n", s.n}, {"rounds", s.rounds}, {"num_colors", s.num_colors}};
  if (k <= 2) p["colors"] = s.colors;
  emit(o, p, t.str());
  return 0;
}

int cmd_distinguish(const Options& o, const std::string& a, const std::string& b, int k) {
  bool d = distinguishes(load(a), load(b), k);
  json p = {{"k", k}, {"distinguished", d}};
  emit(o, p, std::string(d ? "distinguishable" : "indistinguishable") + "\n");
  return 0;
}

int cmd_analyze(const Options& o, const std::string& file, bool dot) {
  auto c = closed(file);
  auto q = quotient_graph(c);
  std::ostringstream t;
  json p;
  p["n"] = c.n();
  p["rank"] = c.rank();
  json fibers = json::array();
  for (int f = 0; f < c.fiber_count(); ++f) {
    std::string cls = to_string(q.size_class[f]);
    std::string type = to_string(type_tuple(c, f));
    t << "fiber\t" << f << '\t' << q.sizes[f] << '\t' << cls << '\t' << type << '\t' << (q.relevant[f] ? "relevant" : "-")
      << '\t' << join(c.fibers()[f]) << '\n';
    fibers.push_back({{"id", f},
                      {"size", q.sizes[f]},
                      {"class", cls},
                      {"type", type},
                      {"relevant", static_cast<bool>(q.relevant[f])},
                      {"vertices", c.fibers()[f]}});
  }
  p["fibers"] = fibers;
  json inter = json::array();
  for (int r = 0; r < c.fiber_count(); ++r)
    for (int b = r + 1; b < c.fiber_count(); ++b) {
      auto is = interspace(c, r, b);
      if (is.homogeneous) continue;
      t << "interspace\t" << r << '\t' << b << '\t' << join(is.degrees) << '\t' << to_string(interspace_type(c, r, b)) << '\n';
      inter.push_back({{"r", r},
                       {"b", b},
                       {"relations", is.relations},
                       {"degrees", is.degrees},
                       {"type", to_string(interspace_type(c, r, b))}});
    }
  p["interspaces"] = inter;
  json edges = json::array();
  for (auto [u, v] : q.graph.edges()) edges.push_back({u, v});
  p["quotient"] = edges;
  if (dot) {
    std::ostringstream d;
    d << "graph quotient {\n";
    for (int f = 0; f < c.fiber_count(); ++f) d << "  " << f << " [label=\"" << f << " (" << q.sizes[f] << ")\"];\n";
    for (auto [u, v] : q.graph.edges()) d << "  " << u << " -- " << v << ";\n";
    d << "}\n";
    p["dot"] = d.str();
    t << d.str();
  } else {
    for (auto [u, v] : q.graph.edges()) t << "quotient\t" << u << '\t' << v << '\n';
  }
  emit(o, p, t.str());
  return 0;
}

int cmd_classify(const Options& o, const std::string& file) {
  auto c = closed(file);
  std::ostringstream t;
  json rows = json::array();
  for (const auto& e : classify_all(c)) {
    if (e.ok) {
      t << e.l << '\t' << e.s << '\t' << e.pattern.name << '\t' << e.pattern.part_count << '\t' << e.structure << '\n';
      rows.push_back({{"l", e.l}, {"s", e.s}, {"pattern", e.pattern.name}, {"parts", e.pattern.part_count}, {"structure", e.structure}});
    } else {
      t << e.l << '\t' << e.s << "\t-\t-\t-\t# " << e.error << '\n';
      rows.push_back({{"l", e.l}, {"s", e.s}, {"error", e.error}});
    }
  }
  emit(o, rows, t.str());
  return 0;
}

int cmd_census(const Options& o, int order, const std::string& cell, bool exhaustive, const std::string& out) {
  std::ostringstream t;
  json rows = json::array();
  auto path_for = [&](const std::string& stem) -> std::string {
    if (out.empty()) return "-";
    std::filesystem::create_directories(out);
    return (std::filesystem::path(out) / (stem + ".graph")).string();
  };
  if (!cell.empty()) {
    int r = 0, b = 0;
    char comma = 0;
    std::istringstream in(cell);
    if (!(in >> r >> comma >> b) || comma != ',') throw UsageError("--cell expects r,b");
    auto ic = enumerate_small_interspaces(r, b, exhaustive);
    int i = 0;
    for (const auto& e : ic.entries) {
      auto path = path_for("cell_" + std::to_string(r) + "_" + std::to_string(b) + "_" + std::to_string(i++));
      if (path != "-") write_file(path, serialize(e.representative.base()));
      t << r << ',' << b << '\t' << to_string(e.type) << '\t' << path << '\n';
      rows.push_back({{"cell", {r, b}}, {"type", to_string(e.type)}, {"path", path}});
    }
    std::cerr << "census: " << ic.entries.size() << " types (" << (ic.exhaustive ? "exhaustive" : "realizability only") << ")\n";
  } else {
    if (order < 1) throw UsageError("census needs --order or --cell");
    auto entries = enumerate_homogeneous(order);
    int i = 0;
    for (const auto& e : entries) {
      auto path = path_for("order_" + std::to_string(order) + "_" + std::to_string(i++));
      if (path != "-") write_file(path, serialize(e.representative.base()));
      t << e.order << '\t' << to_string(e.type) << '\t' << path << '\n';
      rows.push_back({{"order", e.order}, {"type", to_string(e.type)}, {"path", path}});
    }
    std::cerr << "census: " << entries.size() << " homogeneous configurations of order " << order << '\n';
  }
  emit(o, rows, t.str());
  return 0;
}

json step_json(const ReductionStep& s) {
  return {{"kind", to_string(s.kind)}, {"tag", s.tag},       {"fibers", s.fibers},
          {"vertices", s.vertices},    {"relation", s.relation}, {"detail", s.detail}};
}

int cmd_reduce(const Options& o, const std::string& file, const std::string& trace_out) {
  auto c = closed(file);
  auto red = reduce_to_core(c);
  if (!(replay(c, red.trace) == red.result)) throw IntegrityError("replaying the trace does not reproduce the result");
  std::ostringstream t;
  json steps = json::array();
  ReductionTrace prefix;
  Rational tau = potential(parameters(c));
  for (const auto& s : red.trace.steps) {
    prefix.steps.push_back(s);
    Rational next = potential(parameters(replay(c, prefix)));
    auto j = step_json(s);
    j["tau_before"] = to_string(tau);
    j["tau_after"] = to_string(next);
    j["delta_tau"] = to_string(next - tau);
    steps.push_back(j);
    t << to_string(s.kind) << '\t' << s.tag << '\t' << join(s.fibers) << '\t' << join(s.vertices) << '\t'
      << to_string(next - tau) << '\n';
    tau = next;
  }
  t << "# result n=" << red.result.n() << " fibers=" << red.result.fiber_count() << " kept=" << join(red.kept) << '\n';
  for (const auto& sk : red.trace.skipped) t << "# skipped " << sk << '\n';
  json p = {{"input_n", c.n()},
            {"result_n", red.result.n()},
            {"result_fibers", red.result.fiber_count()},
            {"kept", red.kept},
            {"steps", steps},
            {"skipped", red.trace.skipped}};
  if (!trace_out.empty()) write_file(trace_out, p.dump(2) + "\n");
  emit(o, p, t.str());
  return 0;
}

json certificate_json(const BoundCertificate& b) {
  json chain = json::array();
  for (const auto& l : b.chain)
    chain.push_back({{"individualized", l.individualized},
                     {"vertices", l.vertices},
                     {"tag", l.tag},
                     {"sub_n", l.sub_n},
                     {"sub_fibers", l.sub_fibers}});
  json comps = json::array();
  for (const auto& x : b.components) comps.push_back(certificate_json(x));
  return {{"chain", chain},         {"terminal_kind", b.terminal_kind}, {"terminal", b.terminal},
          {"total", b.total},       {"conditional", b.conditional},     {"note", b.note},
          {"components", comps}};
}

int cmd_wldim(const Options& o, const std::string& file, bool exact) {
  std::vector<int> colors;
  auto g = load_simple(file, &colors);
  if (exact) {
    int d = exact_wldim(g, colors);
    emit(o, {{"n", g.n()}, {"wldim", d}, {"exact", true}}, std::to_string(d) + "\n");
    return 0;
  }
  auto cert = colors.empty() ? upper_bound_certificate(g) : upper_bound_certificate(coherent_closure(to_digraph(g, colors)));
  emit(o, {{"n", g.n()}, {"upper_bound", cert.total}, {"exact", false}, {"conditional", cert.conditional}},
       "<= " + std::to_string(cert.total) + "\n");
  return 0;
}

int cmd_limit(const Options& o, const std::string& file, int cap, int valence) {
  auto c = closed(file);
  auto r = cap > 0 ? limit_fiber_size(c, cap, valence) : limit_color_valence(c, valence);
  if (!r.within_bound)
    throw IntegrityError("individualized " + std::to_string(r.individualized.size()) + " vertices, bound " +
                         std::to_string(r.bound_numerator) + "/" + std::to_string(r.bound_denominator));
  int deg = max_nonmaximal_degree(r.result), part = max_module_fiber_size(r.result);
  std::ostringstream t;
  t << "individualized\t" << join(r.individualized) << '\n'
    << "count\t" << r.individualized.size() << '\n'
    << "bound\t" << to_string(Rational(r.bound_numerator, r.bound_denominator)) << '\n'
    << "max_nonmaximal_degree\t" << deg << '\n'
    << "max_module_fiber_size\t" << part << '\n'
    << "fibers\t" << r.result.fiber_count() << '\n';
  json p = {{"individualized", r.individualized},
            {"bound", to_string(Rational(r.bound_numerator, r.bound_denominator))},
            {"within_bound", r.within_bound},
            {"max_nonmaximal_degree", deg},
            {"max_module_fiber_size", part},
            {"fibers", r.result.fiber_count()}};
  emit(o, p, t.str());
  return 0;
}

int cmd_bound(const Options& o, const std::string& file, const std::string& cert_out) {
  std::vector<int> colors;
  BoundCertificate cert;
  bool simple = true;
  SimpleGraph g;
  try {
    g = load_simple(file, &colors);
  } catch (const UsageError&) {
    simple = false;
  }
  if (simple && colors.empty()) cert = upper_bound_certificate(g);
  else cert = upper_bound_certificate(closed(file));
  if (!check_certificate_total(cert)) throw IntegrityError("certificate total does not match its chain");
  auto p = certificate_json(cert);
  if (!cert_out.empty()) write_file(cert_out, p.dump(2) + "\n");
  std::ostringstream t;
  t << "total\t" << cert.total << '\n'
    << "terminal\t" << cert.terminal_kind << '\t' << cert.terminal << '\n'
    << "chain\t" << cert.chain.size() << '\n'
    << "conditional\t" << (cert.conditional ? "yes" : "no") << '\n';
  emit(o, p, t.str());
  return 0;
}

std::vector<std::pair<int, int>> parse_twist(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos) throw UsageError("twist edges are written u-v");
    try {
      out.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
    } catch (const std::exception&) {
      throw UsageError("bad twist edge " + item);
    }
  }
  return out;
}

int cmd_cfi(const Options& o, const std::string& base_file, const std::string& twist, int check_k) {
  auto base = load_simple(base_file);
  auto tw = parse_twist(twist);
  auto g = cfi(base, tw);
  json p = {{"n", g.graph.n()}, {"origin", g.origin}};
  std::ostringstream t;
  if (check_k > 0) {
    auto r = cfi_lower_bound_check(base, check_k);
    p["check"] = {{"k", r.k}, {"distinguished", r.distinguished}, {"tw", r.tw}, {"tw_exact", r.tw_exact}, {"consistent", r.consistent}};
    if (!r.consistent)
      throw IntegrityError("k=" + std::to_string(check_k) + " distinguishes a CFI pair over a base of treewidth " +
                           std::to_string(r.tw));
    t << "k\t" << r.k << '\n'
      << "distinguished\t" << (r.distinguished ? "yes" : "no") << '\n'
      << "treewidth\t" << r.tw << (r.tw_exact ? "" : " (upper bound)") << '\n';
  } else {
    t << "n " << g.graph.n() << '\n';
    for (int v = 0; v < g.graph.n(); ++v)
      if (g.origin[v]) t << "vcolor " << v << ' ' << g.origin[v] << '\n';
    for (auto [u, v] : g.graph.edges()) t << "edge " << u << ' ' << v << '\n';
    json edges = json::array();
    for (auto [u, v] : g.graph.edges()) edges.push_back({u, v});
    p["edges"] = edges;
  }
  emit(o, p, t.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weisfeiler-Leman and coherent configuration toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "JSON payload instead of TSV/text");
  app.add_option("--seed", o.seed, "seed for randomized choices");
  app.add_option("--threads", o.threads, "worker thread cap")->check(CLI::NonNegativeNumber);

  std::string file, file2, out, trace, cert, base, twist, cell;
  int k = 2, order = 0, cap = 0, valence = 1, check_k = 0;
  bool dot = false, exact = false, exhaustive = false;
  std::function<int()> run;

  auto* closure = app.add_subcommand("closure", "coherent closure of a graph");
  closure->add_option("file", file)->required();
  closure->add_option("-o,--out", out, "also write the closure here");
  closure->callback([&] { run = [&] { return cmd_closure(o, file, out); }; });

  auto* kwl = app.add_subcommand("kwl", "stable k-WL coloring");
  kwl->add_option("file", file)->required();
  kwl->add_option("-k", k)->check(CLI::PositiveNumber);
  kwl->callback([&] { run = [&] { return cmd_kwl(o, file, k); }; });

  auto* dist = app.add_subcommand("distinguish", "does k-WL distinguish two graphs");
  dist->add_option("first", file)->required();
  dist->add_option("second", file2)->required();
  dist->add_option("-k", k)->check(CLI::PositiveNumber);
  dist->callback([&] { run = [&] { return cmd_distinguish(o, file, file2, k); }; });

  auto* analyze = app.add_subcommand("analyze", "fibers, interspaces and quotient graph of the closure");
  analyze->add_option("file", file)->required();
  analyze->add_flag("--dot", dot, "quotient graph in DOT format");
  analyze->callback([&] { run = [&] { return cmd_analyze(o, file, dot); }; });

  auto* classify = app.add_subcommand("classify", "interspace patterns of quotient edges at fibers of size 4 or 6");
  classify->add_option("file", file)->required();
  classify->callback([&] { run = [&] { return cmd_classify(o, file); }; });

  auto* census = app.add_subcommand("census", "homogeneous configurations or two-fiber interspace cells");
  census->add_option("--order", order);
  census->add_option("--cell", cell, "fiber sizes r,b");
  census->add_flag("--exhaustive", exhaustive);
  census->add_option("--out", out, "directory for representative files");
  census->callback([&] { run = [&] { return cmd_census(o, order, cell, exhaustive, out); }; });

  auto* reduce = app.add_subcommand("reduce", "removal rules to a fixpoint");
  reduce->add_option("file", file)->required();
  reduce->add_option("--trace", trace, "write the trace as JSON");
  reduce->callback([&] { run = [&] { return cmd_reduce(o, file, trace); }; });

  auto* wldim = app.add_subcommand("wldim", "WL dimension of an undirected graph");
  wldim->add_option("file", file)->required();
  wldim->add_flag("--exact", exact, "exhaustive computation (n <= 7)");
  wldim->callback([&] { run = [&] { return cmd_wldim(o, file, exact); }; });

  auto* limit = app.add_subcommand("limit", "valence and fiber-size limiting");
  limit->add_option("file", file)->required();
  limit->add_option("--cap", cap, "fiber-part size cap (omit for the valence limit only)");
  limit->add_option("--valence", valence, "non-maximal degree bound")->required();
  limit->callback([&] { run = [&] { return cmd_limit(o, file, cap, valence); }; });

  auto* bound = app.add_subcommand("bound", "upper-bound certificate for the WL dimension");
  bound->add_option("file", file)->required();
  bound->add_option("--certificate", cert, "write the certificate as JSON");
  bound->callback([&] { run = [&] { return cmd_bound(o, file, cert); }; });

  auto* cfic = app.add_subcommand("cfi", "CFI graph over a base graph");
  cfic->add_option("--base", base)->required();
  cfic->add_option("--twist", twist, "twisted edges u-v,u-v");
  cfic->add_option("--check-k", check_k, "compare untwisted and one-twist graphs at k-WL");
  cfic->callback([&] { run = [&] { return cmd_cfi(o, base, twist, check_k); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (o.threads > 0) omp_set_num_threads(o.threads);
  try {
    return run();
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
