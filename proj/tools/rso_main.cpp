// rso: command-line front end for the graph constructions, verifiers, local
// ordering algorithms and reductions.
//
//   rso gen schreier --p 5 --out s5
//   rso verify robustness --in s5.secondary.json --exact
//   rso demo
//
// Every run writes its artifacts as <out>.<name>.json plus <out>.manifest.json.
// Artifacts embed the hash of their manifest. Exit codes: 0 success, 1 invalid
// input or failed check, 2 usage error.

#include <chrono>
#include <cmath>
#include <optional>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "rso/demo_suite.hpp"
#include "rso/dense.hpp"
#include "rso/error.hpp"
#include "rso/generators.hpp"
#include "rso/isomorphism.hpp"
#include "rso/local_order.hpp"
#include "rso/permutations.hpp"
#include "rso/pt_reduction.hpp"
#include "rso/schreier.hpp"
#include "rso/serialize.hpp"
#include "rso/three_step.hpp"
#include "rso/transforms.hpp"
#include "rso/verify.hpp"

using nlohmann::json;
using namespace rso;

namespace {

// ------------------------------------------------------------------ hashing

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------------ run state

// One invocation: its identity (subcommand, parameters, seed) determines the
// manifest hash, so re-running with the same arguments reproduces artifacts
// byte for byte.
struct Run {
  std::string subcommand;
  json params = json::object();
  std::optional<std::uint64_t> seed;
  std::string out = "rso_out";
  std::vector<std::pair<std::string, std::string>> artifacts;  // path, sha256
  std::vector<std::string> argv;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string hash() const {
    json id = {{"subcommand", subcommand}, {"params", params}};
    id["seed"] = seed ? json(*seed) : json(nullptr);
    return sha256_hex(id.dump());
  }

  void write(const std::string& name, json payload) {
    payload["manifest_hash"] = hash();
    const std::string path = out + "." + name + ".json";
    const std::string text = payload.dump(1) + "\n";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + path);
    f << text;
    artifacts.emplace_back(path, sha256_hex(text));
  }

  void finish() const {
    json m;
    m["tool"] = "rso";
    m["subcommand"] = subcommand;
    m["params"] = params;
    m["seed"] = seed ? json(*seed) : json(nullptr);
    m["manifest_hash"] = hash();
    m["local_query_constant"] = kLocalQueryConstant;
    auto arts = json::array();
    for (const auto& [p, h] : artifacts) arts.push_back({{"path", p}, {"sha256", h}});
    m["artifacts"] = arts;
    m["argv"] = argv;
    m["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream f(out + ".manifest.json");
    f << m.dump(1) << "\n";
  }
};

// ------------------------------------------------------------------ loading

struct Loaded {
  json artifact;  // whole artifact when the input was one
  GraphDocument doc;
  std::string manifest_hash;  // empty for plain documents
  std::string source_hash;    // hash of the artifact this one was derived from
};

Loaded load_graph(const std::string& path, const std::string& key = "graph") {
  const std::string text = read_file(path);
  Loaded l;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
    if (j.contains(key)) {
      l.artifact = j;
      l.manifest_hash = j.value("manifest_hash", std::string());
      l.source_hash = j.value("source_manifest_hash", std::string());
      l.doc = document_from_json(j.at(key));
    } else {
      l.doc = document_from_json(j);
    }
  } else {
    l.doc = parse_text(text);
  }
  return l;
}

json load_artifact(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// A verify run given --manifest refuses inputs produced under another manifest,
// and refuses a manifest whose recorded parameters do not hash to its own hash.
void check_manifest(const std::string& manifest_path, const std::string& artifact_hash) {
  if (manifest_path.empty()) return;
  json m = load_artifact(manifest_path);
  json id = {{"subcommand", m.at("subcommand")}, {"params", m.at("params")}, {"seed", m.at("seed")}};
  const std::string recomputed = sha256_hex(id.dump());
  if (recomputed != m.value("manifest_hash", std::string()))
    throw ValidationError("manifest " + manifest_path + " does not match its recorded parameters");
  if (artifact_hash.empty())
    throw ValidationError("input carries no manifest hash, cannot check it against " + manifest_path);
  if (artifact_hash != recomputed)
    throw ValidationError("input was produced under a different manifest (" + artifact_hash.substr(0, 12) +
                          "... vs " + recomputed.substr(0, 12) + "...)");
}

Bits parse_bits(const std::string& s) {
  Bits b;
  for (char c : s) {
    if (c == '0' || c == '1') b.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw ValidationError(std::string("string may contain only 0 and 1, found '") + c + "'");
  }
  return b;
}

std::string bits_string(const Bits& b) {
  std::string s;
  for (auto x : b) s.push_back(x ? '1' : '0');
  return s;
}

int threads_from(int flag) {
  if (const char* env = std::getenv("RSO_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("RSO_THREADS must be a positive integer, got \"") + env + "\"");
  }
  return flag;
}

json graph_payload(const Graph& g) { return {{"graph", to_json(to_document(g))}}; }

// Local-ordering bundle: three-step parameters plus what is needed to rebuild
// the augmented graph deterministically.
struct LocalBundle {
  ThreeStepParams params;
  AugmentedGraph aug;
  std::string manifest_hash;
};

LocalBundle load_bundle(const std::string& path) {
  json j = load_artifact(path);
  LocalBundle b;
  b.params = ThreeStepParams::from_json(j.at("params"));
  if (!j.contains("gadget_seed")) throw ValidationError(path + ": parameters were not generated with --local-code");
  b.aug = augment_for_local_ordering(assemble(b.params), b.params, j.at("gadget_seed").get<std::uint64_t>(),
                                     j.value("ell_h", 0));
  b.manifest_hash = j.value("manifest_hash", std::string());
  return b;
}

void require_derived(const Loaded& g, const std::string& params_hash) {
  if (params_hash.empty() || (g.manifest_hash.empty() && g.source_hash.empty())) return;
  if (g.manifest_hash != params_hash && g.source_hash != params_hash)
    throw ValidationError("graph was not derived from these parameters (manifest hashes differ)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructions and checks for robustly self-ordered graphs"};
  app.require_subcommand(1);
  Run run;
  run.argv.assign(argv, argv + argc);
  std::function<void()> action;
  int exit_code = 0;

  auto out_opt = [&](CLI::App* c) { c->add_option("--out", run.out, "Output prefix for artifacts and manifest"); };
  auto seed_opt = [&](CLI::App* c, std::uint64_t& s) { c->add_option("--seed", s, "Random seed")->required(); };

  // ================================================================ gen
  auto* gen = app.add_subcommand("gen", "Generate graphs, codes, gadgets and tables");
  gen->require_subcommand(1);

  int asym_n = 6;
  auto* g_asym = gen->add_subcommand("asymmetric", "First asymmetric graph on n vertices (edge-mask order)");
  g_asym->add_option("--n", asym_n)->required()->check(CLI::Range(2, 7));
  out_opt(g_asym);
  g_asym->callback([&] {
    action = [&] {
      run.subcommand = "gen asymmetric";
      run.params = {{"n", asym_n}};
      auto g = first_asymmetric_graph(asym_n);
      if (!g) {
        std::cout << "no asymmetric graph on " << asym_n << " vertices\n";
        exit_code = 1;
        return;
      }
      run.write("graph", graph_payload(*g));
      std::cout << serialize_text(*g);
    };
  });

  int rnd_n = 0;
  double rnd_p = 0.5;
  std::uint64_t rnd_seed = 0;
  auto* g_rnd = gen->add_subcommand("random", "G(n, p); p = 1/2 uses the one-coin-per-pair dense sampler");
  g_rnd->add_option("--n", rnd_n)->required()->check(CLI::PositiveNumber);
  g_rnd->add_option("--p", rnd_p)->check(CLI::Range(0.0, 1.0));
  seed_opt(g_rnd, rnd_seed);
  out_opt(g_rnd);
  g_rnd->callback([&] {
    action = [&] {
      run.subcommand = "gen random";
      run.params = {{"n", rnd_n}, {"p", rnd_p}};
      run.seed = rnd_seed;
      Graph g;
      if (rnd_p == 0.5) g = random_dense(rnd_n, rnd_seed);
      else {
        std::mt19937_64 rng(rnd_seed);
        g = random_gnp(rnd_n, rnd_p, rng);
      }
      run.write("graph", graph_payload(g));
      std::cout << rnd_n << " vertices, " << g.edge_count() << " edges\n";
    };
  });

  int reg_n = 0, reg_d = 0;
  std::uint64_t reg_seed = 0;
  auto* g_reg = gen->add_subcommand("regular", "d-regular graph from the permutation model (redraws until simple)");
  g_reg->add_option("--n", reg_n)->required()->check(CLI::PositiveNumber);
  g_reg->add_option("--d", reg_d)->required()->check(CLI::NonNegativeNumber);
  seed_opt(g_reg, reg_seed);
  out_opt(g_reg);
  g_reg->callback([&] {
    action = [&] {
      run.subcommand = "gen regular";
      run.params = {{"n", reg_n}, {"d", reg_d}};
      run.seed = reg_seed;
      std::mt19937_64 rng(reg_seed);
      for (int attempt = 0; attempt < 100000; ++attempt) {
        if (auto g = random_regular_permutation_model(reg_n, reg_d, rng)) {
          run.write("graph", graph_payload(*g));
          std::cout << "simple draw after " << attempt + 1 << " attempts\n";
          return;
        }
      }
      throw BudgetExhausted("no simple draw in 100000 attempts");
    };
  });

  std::int64_t sch_p = 5;
  auto* g_sch = gen->add_subcommand("schreier", "Primary and secondary Schreier graphs of SL2(p) on the projective line");
  g_sch->add_option("--p", sch_p)->required();
  out_opt(g_sch);
  g_sch->callback([&] {
    action = [&] {
      run.subcommand = "gen schreier";
      run.params = {{"p", sch_p}};
      SchreierPair sp = sl2_default(sch_p);
      run.write("primary", {{"graph", to_json(to_document(sp.primary))}});
      run.write("secondary", {{"graph", to_json(to_document(sp.secondary))}});
      std::cout << "primary: " << sp.primary.n() << " points, " << sp.primary.arc_count() << " arcs; secondary: "
                << sp.secondary.n() << " pairs, " << sp.secondary.edge_count() << " edges\n";
    };
  });

  int ts_n = 0, ts_ell = 0, ts_dprime = 3;
  std::uint64_t ts_seed = 0;
  bool ts_local = false;
  auto* g_ts = gen->add_subcommand("three-step", "Assembled bounded-degree graph from two small robust graphs");
  g_ts->add_option("--n", ts_n)->required()->check(CLI::PositiveNumber);
  g_ts->add_option("--ell", ts_ell)->required()->check(CLI::Range(4, 64));
  g_ts->add_option("--dprime", ts_dprime)->check(CLI::Range(2, 8));
  seed_opt(g_ts, ts_seed);
  g_ts->add_flag("--local-code", ts_local, "Code-based permutations plus the path-finder and gadgets");
  out_opt(g_ts);
  g_ts->callback([&] {
    action = [&] {
      run.subcommand = "gen three-step";
      run.params = {{"n", ts_n}, {"ell", ts_ell}, {"dprime", ts_dprime}, {"local_code", ts_local}};
      run.seed = ts_seed;
      if (ts_n % (2 * ts_ell)) throw ValidationError("n must be a multiple of 2*ell");
      const int comps = ts_n / (2 * ts_ell);
      SmallRsoOptions o;
      o.exact = ts_ell <= 9;
      o.regular = !o.exact;
      o.min_degree = o.exact ? 2 : 1;
      o.adversarial_samples = 2000;
      SmallRsoResult a = find_rso_small(ts_ell, ts_dprime, ts_seed * 2 + 1, 200000, o);
      SmallRsoOptions o2 = o;
      o2.accept = [&](const Graph& g) { return !are_isomorphic(g, a.graph); };
      SmallRsoResult b = find_rso_small(ts_ell, ts_dprime + 1, ts_seed * 2 + 2, 200000, o2);
      ThreeStepParams p;
      p.n = ts_n;
      p.ell = ts_ell;
      p.dprime = ts_dprime;
      p.g1 = a.graph;
      p.g2 = b.graph;
      p.seed = ts_seed;
      json payload;
      if (ts_local) {
        if (ts_ell % 2) throw ValidationError("--local-code needs an even ell (permutations act on pairs)");
        int k = 0;
        while ((1 << k) < comps) ++k;
        if ((1 << k) != comps)
          throw ValidationError("--local-code needs n / (2*ell) to be a power of two, got " + std::to_string(comps));
        const int half = ts_ell / 2;
        if (k > half) throw ValidationError("--local-code: too many components for a code of length ell/2");
        p.code = make_small_code(k, static_cast<double>(k) / half, ts_seed);
        p.validate();
        AugmentedGraph aug = augment_for_local_ordering(assemble(p), p, ts_seed + 7);
        payload = {{"params", p.to_json()}, {"gadget_seed", ts_seed + 7}, {"ell_h", aug.pf.ell_h}};
        run.write("params", payload);
        run.write("graph", graph_payload(aug.graph));
        std::cout << "augmented graph: " << aug.graph.n() << " vertices (" << ts_n << " original), "
                  << aug.gadgets.size() << " gadget types, path-finder dimension " << aug.pf.ell_h << "\n";
      } else {
        p.perms = greedy_far_collection(ts_ell, comps, 0.5, ts_seed);
        p.validate();
        run.write("params", {{"params", p.to_json()}});
        run.write("graph", graph_payload(assemble(p)));
        std::cout << comps << " components of " << 2 * ts_ell << " vertices\n";
      }
    };
  });

  std::string dn_kind;
  int dn_n = 6, dn_m = 100, dn_s = 9;
  double dn_eps = 0.35;
  std::uint64_t dn_seed = 0;
  auto* g_dn = gen->add_subcommand("dense", "Dense constructions: random, nmE, tri, efficient-so");
  g_dn->add_option("--kind", dn_kind)->required()->check(CLI::IsMember({"random", "nmE", "tri", "efficient-so"}));
  g_dn->add_option("--n", dn_n, "Vertices (random) or table side (nmE)");
  g_dn->add_option("--m", dn_m, "Vertices of the first half (efficient-so)");
  g_dn->add_option("--s", dn_s, "Size of the signature set S1 (efficient-so)");
  g_dn->add_option("--eps", dn_eps, "Target error for the extractor search");
  seed_opt(g_dn, dn_seed);
  out_opt(g_dn);
  g_dn->callback([&] {
    action = [&] {
      run.subcommand = "gen dense";
      run.params = {{"kind", dn_kind}, {"n", dn_n}, {"m", dn_m}, {"s", dn_s}, {"eps", dn_eps}};
      run.seed = dn_seed;
      const Rational eps(static_cast<std::int64_t>(std::llround(dn_eps * 1000)), 1000);
      if (dn_kind == "random") {
        run.write("graph", graph_payload(random_dense(dn_n, dn_seed)));
      } else if (dn_kind == "nmE") {
        const NmMode mode = dn_n <= 6 ? NmMode::Exact : NmMode::Sampled;
        TwoSourceFunction f = search_small_nmE(dn_n, eps, dn_seed, 100000, mode);
        run.write("table", {{"table", to_json(f)}});
        run.write("graph", graph_payload(nmE_graph(f)));
        std::cout << "eps_qo " << to_string(*f.eps_qo) << ", eps_nm " << to_string(*f.eps_nm) << " (" << f.nm_mode
                  << ")\n";
      } else if (dn_kind == "tri") {
        TwoSourceFunction f = search_small_nmE(7, eps, dn_seed, 100000, NmMode::Sampled, 4000);
        TwoSourceFunction b = small_bias_bipartite(3);
        run.write("table", {{"table", to_json(f)}, {"bias_table", to_json(b)}});
        run.write("graph", graph_payload(tri_graph(f, b)));
      } else {
        std::string why = efficient_so_infeasibility(dn_m, dn_s);
        if (!why.empty()) throw ValidationError("efficient-so: " + why);
        EfficientSoGraph e = efficient_so_graph_random(dn_m, dn_s, dn_seed);
        run.write("structure", {{"structure", e.to_json()}, {"m", dn_m}, {"s", dn_s}, {"structure_seed", dn_seed}});
        run.write("graph", graph_payload(e.graph));
        std::cout << e.graph.n() << " vertices, " << e.graph.edge_count() << " edges\n";
      }
    };
  });

  int gd_d = 4, gd_count = 3, gd_k = 6;
  bool gd_regular = false;
  std::uint64_t gd_seed = 0;
  auto* g_gd = gen->add_subcommand("gadgets", "Pairwise non-isomorphic asymmetric gadgets");
  g_gd->add_option("--d", gd_d)->required();
  g_gd->add_option("--count", gd_count)->required();
  g_gd->add_option("--k", gd_k)->required();
  g_gd->add_flag("--regular", gd_regular);
  seed_opt(g_gd, gd_seed);
  out_opt(g_gd);
  g_gd->callback([&] {
    action = [&] {
      run.subcommand = "gen gadgets";
      run.params = {{"d", gd_d}, {"count", gd_count}, {"k", gd_k}, {"regular", gd_regular}};
      run.seed = gd_seed;
      GadgetSet gs = find_gadgets(gd_d, gd_count, gd_k, gd_seed, gd_regular);
      run.write("gadgets", {{"gadgets", gs.to_json()}});
    };
  });

  int code_k = 4;
  double code_rate = 0.5;
  std::uint64_t code_seed = 0;
  auto* g_code = gen->add_subcommand("code", "Random binary linear code with exhaustively checked distance");
  g_code->add_option("--k", code_k)->required()->check(CLI::Range(1, 20));
  g_code->add_option("--rate", code_rate)->required()->check(CLI::Range(0.01, 1.0));
  seed_opt(g_code, code_seed);
  out_opt(g_code);
  g_code->callback([&] {
    action = [&] {
      run.subcommand = "gen code";
      run.params = {{"k", code_k}, {"rate", code_rate}};
      run.seed = code_seed;
      BinaryCode c = make_small_code(code_k, code_rate, code_seed);
      run.write("code", {{"code", c.to_json()}});
      std::cout << "[" << c.L << "," << c.k << "] code, minimum distance " << c.min_distance
                << (c.distance_verified ? " (verified)" : " (sampled bound)") << "\n";
    };
  });

  // ================================================================ transform
  auto* tr = app.add_subcommand("transform", "Graph-to-graph transformations");
  tr->require_subcommand(1);
  std::string tr_in, tr_with, tr_gadgets;
  int tr_d = 0, tr_c = 0, tr_dmax = 1 << 30;
  std::uint64_t tr_seed = 0;

  auto* t_el = tr->add_subcommand("eligible", "Add self-loops and recolor parallel edges");
  t_el->add_option("--in", tr_in)->required();
  t_el->add_option("--d", tr_d)->required();
  t_el->add_option("--c", tr_c)->required();
  out_opt(t_el);
  t_el->callback([&] {
    action = [&] {
      run.subcommand = "transform eligible";
      Loaded l = load_graph(tr_in);
      run.params = {{"input", to_json(l.doc)}, {"d", tr_d}, {"c", tr_c}};
      ColoredMultiGraph m = eligibility_pass(colored_from_document(l.doc), tr_d, tr_c);
      run.write("graph", {{"graph", to_json(to_document(m))}, {"source_manifest_hash", l.manifest_hash}});
    };
  });

  auto* t_gz = tr->add_subcommand("gadgetize", "Replace colored edges by gadgets");
  t_gz->add_option("--in", tr_in)->required();
  t_gz->add_option("--gadgets", tr_gadgets)->required();
  out_opt(t_gz);
  t_gz->callback([&] {
    action = [&] {
      run.subcommand = "transform gadgetize";
      Loaded l = load_graph(tr_in);
      json gj = load_artifact(tr_gadgets);
      const json& gset = gj.is_object() ? gj.at("gadgets") : gj;
      GadgetSet gs;
      for (const auto& g : gset) {
        gs.gadgets.push_back(graph_from_document(document_from_json(g)));
        gs.designated.push_back({g.at("designated").at(0).get<int>(), g.at("designated").at(1).get<int>()});
      }
      gs.validate();
      run.params = {{"input", to_json(l.doc)}, {"gadgets", gs.to_json()}};
      Graph g = gadgetize(colored_from_document(l.doc), gs);
      run.write("graph", {{"graph", to_json(to_document(g))}, {"source_manifest_hash", l.manifest_hash}});
      std::cout << g.n() << " vertices, " << g.edge_count() << " edges\n";
    };
  });

  auto* t_dir = tr->add_subcommand("directed", "Directed colored multigraph to undirected colored multigraph");
  t_dir->add_option("--in", tr_in)->required();
  t_dir->add_option("--dmax", tr_dmax);
  out_opt(t_dir);
  t_dir->callback([&] {
    action = [&] {
      run.subcommand = "transform directed";
      Loaded l = load_graph(tr_in);
      run.params = {{"input", to_json(l.doc)}, {"dmax", tr_dmax}};
      ColoredMultiGraph m = directed_to_undirected(directed_from_document(l.doc), tr_dmax);
      run.write("graph", {{"graph", to_json(to_document(m))}, {"source_manifest_hash", l.manifest_hash}});
    };
  });

  auto* t_sup = tr->add_subcommand("superimpose", "Union of two graphs on the same vertex set");
  t_sup->add_option("--in", tr_in)->required();
  t_sup->add_option("--with", tr_with)->required();
  out_opt(t_sup);
  t_sup->callback([&] {
    action = [&] {
      run.subcommand = "transform superimpose";
      Loaded a = load_graph(tr_in), b = load_graph(tr_with);
      run.params = {{"input", to_json(a.doc)}, {"with", to_json(b.doc)}};
      Graph g = superimpose(graph_from_document(a.doc), graph_from_document(b.doc));
      run.write("graph", {{"graph", to_json(to_document(g))}, {"source_manifest_hash", a.manifest_hash}});
    };
  });

  auto* t_perm = tr->add_subcommand("permute", "Relabel a graph by a seeded uniform permutation");
  t_perm->add_option("--in", tr_in)->required();
  seed_opt(t_perm, tr_seed);
  out_opt(t_perm);
  t_perm->callback([&] {
    action = [&] {
      run.subcommand = "transform permute";
      Loaded l = load_graph(tr_in);
      run.params = {{"input_sha256", sha256_hex(to_json(l.doc).dump())}};
      run.seed = tr_seed;
      Graph g = graph_from_document(l.doc);
      std::mt19937_64 rng(tr_seed);
      Permutation mu = Permutation::random(g.n(), rng);
      const std::string src = l.source_hash.empty() ? l.manifest_hash : l.source_hash;
      run.write("graph", {{"graph", to_json(to_document(apply_permutation(g, mu)))}, {"source_manifest_hash", src}});
      run.write("permutation", {{"permutation", mu.images()}});
    };
  });

  // ================================================================ verify
  auto* ve = app.add_subcommand("verify", "Robustness, self-ordering, expansion, distance and extractor checks");
  ve->require_subcommand(1);
  std::string ve_in, ve_with, ve_manifest;
  bool ve_exact = false, ve_adv = false, ve_spectral = false;
  std::int64_t ve_samples = 20000;
  std::uint64_t ve_seed = 0;
  int ve_threads = 1, ve_cap = 9, ve_iters = 500;
  double ve_k = 0;
  bool ve_seed_given = false;

  auto verify_common = [&](CLI::App* c) {
    c->add_option("--in", ve_in)->required();
    c->add_option("--manifest", ve_manifest, "Refuse the input unless it was produced under this manifest");
    out_opt(c);
  };
  auto seed_if = [&](CLI::App* c) {
    c->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { ve_seed = s, ve_seed_given = true; },
                                          "Random seed (required for sampled modes)");
  };
  auto need_seed = [&](const char* what) {
    if (!ve_seed_given) throw CLI::RequiredError(std::string("--seed (required by ") + what + ")");
  };

  auto* v_rob = ve->add_subcommand("robustness", "Exact or adversarial robustness");
  verify_common(v_rob);
  auto* ex_flag = v_rob->add_flag("--exact", ve_exact, "Full permutation scan");
  auto* adv_flag = v_rob->add_flag("--adversarial", ve_adv, "Witness families plus seeded samples");
  ex_flag->excludes(adv_flag);
  v_rob->add_option("--samples", ve_samples);
  v_rob->add_option("--threads", ve_threads)->check(CLI::PositiveNumber);
  v_rob->add_option("--cap", ve_cap, "Largest n for the exact scan")->check(CLI::Range(1, 12));
  seed_if(v_rob);
  v_rob->callback([&] {
    if (!ve_exact && !ve_adv) throw CLI::ValidationError("verify robustness", "one of --exact or --adversarial is required");
    if (ve_adv) need_seed("--adversarial");
    action = [&] {
      run.subcommand = "verify robustness";
      Loaded l = load_graph(ve_in);
      check_manifest(ve_manifest, l.manifest_hash);
      const int th = threads_from(ve_threads);
      run.params = {{"input_sha256", sha256_hex(to_json(l.doc).dump())}, {"exact", ve_exact},
                    {"samples", ve_samples}, {"cap", ve_cap}};
      if (ve_adv) run.seed = ve_seed;
      RobustnessReport rep;
      if (l.doc.directed) {
        if (!ve_exact) throw ValidationError("directed inputs support --exact only");
        rep = directed_colored_robustness_exact(directed_from_document(l.doc), ve_cap, th);
      } else if (l.doc.colored) {
        if (!ve_exact) throw ValidationError("colored inputs support --exact only");
        rep = colored_robustness_exact(colored_from_document(l.doc), ve_cap, th);
      } else if (ve_exact) {
        rep = robustness_exact(graph_from_document(l.doc), ve_cap, th);
      } else {
        AdversarialOptions ao;
        ao.samples = ve_samples;
        ao.seed = ve_seed;
        ao.threads = th;
        rep = robustness_adversarial(graph_from_document(l.doc), ao);
      }
      run.write("report", {{"report", rep.to_json()}});
      std::cout << (rep.gamma_exact ? "gamma = " + to_string(*rep.gamma_exact)
                                    : "gamma <= " + to_string(rep.gamma_upper))
                << ", witness " << rep.witness.to_string() << "\n";
    };
  });

  auto* v_so = ve->add_subcommand("self-ordered", "Asymmetry check with an automorphism certificate");
  verify_common(v_so);
  v_so->callback([&] {
    action = [&] {
      run.subcommand = "verify self-ordered";
      Loaded l = load_graph(ve_in);
      check_manifest(ve_manifest, l.manifest_hash);
      run.params = {{"input_sha256", sha256_hex(to_json(l.doc).dump())}};
      SelfOrderResult r = is_self_ordered(graph_from_document(l.doc));
      json rep = {{"self_ordered", r.self_ordered}};
      if (r.automorphism) rep["automorphism"] = r.automorphism->images();
      run.write("report", {{"report", rep}});
      std::cout << (r.self_ordered ? "self-ordered" : "has a non-trivial automorphism " + r.automorphism->to_string())
                << "\n";
      if (!r.self_ordered) exit_code = 1;
    };
  });

  auto* v_exp = ve->add_subcommand("expansion", "Combinatorial (exact or sampled) or spectral expansion");
  verify_common(v_exp);
  v_exp->add_flag("--exact", ve_exact);
  v_exp->add_flag("--spectral", ve_spectral);
  v_exp->add_option("--samples", ve_samples);
  v_exp->add_option("--iterations", ve_iters);
  seed_if(v_exp);
  v_exp->callback([&] {
    if (!ve_exact) need_seed("sampled or spectral expansion");
    action = [&] {
      run.subcommand = "verify expansion";
      Loaded l = load_graph(ve_in);
      check_manifest(ve_manifest, l.manifest_hash);
      run.params = {{"input_sha256", sha256_hex(to_json(l.doc).dump())}, {"exact", ve_exact},
                    {"spectral", ve_spectral}, {"samples", ve_samples}, {"iterations", ve_iters}};
      if (!ve_exact) run.seed = ve_seed;
      Graph g = l.doc.colored ? colored_from_document(l.doc).underlying_simple()
                              : l.doc.directed ? directed_from_document(l.doc).underlying_simple()
                                               : graph_from_document(l.doc);
      ExpansionReport rep = ve_exact      ? expansion_combinatorial(g)
                            : ve_spectral ? expansion_spectral(g, ve_iters, ve_seed)
                                          : expansion_sampled(g, ve_samples, ve_seed);
      run.write("report", {{"report", rep.to_json()}});
      std::cout << rep.to_json().dump() << "\n";
    };
  });

  auto* v_dist = ve->add_subcommand("distance", "Distance from isomorphism between two graphs");
  verify_common(v_dist);
  v_dist->add_option("--with", ve_with)->required();
  v_dist->add_flag("--exact", ve_exact);
  v_dist->add_option("--samples", ve_samples);
  seed_if(v_dist);
  v_dist->callback([&] {
    if (!ve_exact) need_seed("sampled distance");
    action = [&] {
      run.subcommand = "verify distance";
      Loaded a = load_graph(ve_in), b = load_graph(ve_with);
      check_manifest(ve_manifest, a.manifest_hash);
      run.params = {{"input_sha256", sha256_hex(to_json(a.doc).dump())},
                    {"with_sha256", sha256_hex(to_json(b.doc).dump())}, {"exact", ve_exact}, {"samples", ve_samples}};
      if (!ve_exact) run.seed = ve_seed;
      IsoDistance d = far_from_isomorphic(graph_from_document(a.doc), graph_from_document(b.doc),
                                          ve_exact ? DistanceMode::Exact : DistanceMode::Sampled, ve_samples, ve_seed);
      run.write("report", {{"report",
                            {{"lower", d.lower}, {"upper", d.upper}, {"exact", d.exact}, {"witness", d.witness.images()}}}});
      std::cout << "distance " << (d.exact ? "= " + std::to_string(d.upper)
                                           : "in [" + std::to_string(d.lower) + ", " + std::to_string(d.upper) + "]")
                << "\n";
    };
  });

  auto* v_qo = ve->add_subcommand("qo", "Quasi-orthogonality error of a two-source table");
  verify_common(v_qo);
  bool qo_two = false;
  v_qo->add_flag("--two-sided", qo_two, "Also bound pair disagreements from above");
  v_qo->callback([&] {
    action = [&] {
      run.subcommand = "verify qo";
      json a = load_artifact(ve_in);
      check_manifest(ve_manifest, a.value("manifest_hash", std::string()));
      TwoSourceFunction f = two_source_from_json(a.contains("table") ? a["table"] : a);
      run.params = {{"input_sha256", sha256_hex(to_json(f).dump())}, {"two_sided", qo_two}};
      Rational e = quasi_orthogonality_error(f, qo_two);
      run.write("report", {{"report", {{"eps_qo", to_string(e)}}}});
      std::cout << "eps_qo = " << to_string(e) << "\n";
    };
  });

  auto* v_nm = ve->add_subcommand("nm", "Non-malleable extractor error over derangement pairs");
  verify_common(v_nm);
  v_nm->add_option("--k", ve_k, "Min-entropy of the sources (defaults to log2 N)");
  v_nm->add_flag("--exact", ve_exact);
  v_nm->add_option("--samples", ve_samples);
  seed_if(v_nm);
  v_nm->callback([&] {
    if (!ve_exact) need_seed("sampled nm error");
    action = [&] {
      run.subcommand = "verify nm";
      json a = load_artifact(ve_in);
      check_manifest(ve_manifest, a.value("manifest_hash", std::string()));
      TwoSourceFunction f = two_source_from_json(a.contains("table") ? a["table"] : a);
      const double k = ve_k > 0 ? ve_k : std::log2(static_cast<double>(f.n1));
      run.params = {{"input_sha256", sha256_hex(to_json(f).dump())}, {"k", k}, {"exact", ve_exact},
                    {"samples", ve_samples}};
      if (!ve_exact) run.seed = ve_seed;
      NmReport r = nm_extractor_error(f, k, ve_exact ? NmMode::Exact : NmMode::Sampled, ve_seed, ve_samples);
      run.write("report", {{"report",
                            {{"eps_nm", to_string(r.eps)}, {"mode", r.mode}, {"pairs", r.pairs_examined},
                             {"f", r.f.images()}, {"g", r.g.images()}}}});
      std::cout << "eps_nm = " << to_string(r.eps) << " (" << r.mode << ", " << r.pairs_examined << " pairs)\n";
    };
  });

  // ================================================================ order
  auto* od = app.add_subcommand("order", "Local and global ordering of isomorphic copies");
  od->require_subcommand(1);
  std::string od_graph, od_params;
  Vertex od_vertex = 0, od_index = 0, od_start = 0;

  auto* o_loc = od->add_subcommand("local", "Index of a vertex of a relabeled copy of the augmented graph");
  o_loc->add_option("--graph", od_graph)->required();
  o_loc->add_option("--params", od_params)->required();
  o_loc->add_option("--vertex", od_vertex)->required()->check(CLI::PositiveNumber);
  out_opt(o_loc);
  o_loc->callback([&] {
    action = [&] {
      run.subcommand = "order local";
      LocalBundle b = load_bundle(od_params);
      Loaded g = load_graph(od_graph);
      require_derived(g, b.manifest_hash);
      Graph h = graph_from_document(g.doc);
      run.params = {{"graph_sha256", sha256_hex(to_json(g.doc).dump())}, {"params_hash", b.manifest_hash},
                    {"vertex", od_vertex}};
      LocalGraphOracle orc(h);
      LocalOrderer lo(b.params, b.aug, orc);
      Vertex i = lo.order(od_vertex);
      run.write("result", {{"vertex", od_vertex}, {"index", i}, {"queries", lo.last_queries()},
                           {"query_budget", kLocalQueryConstant * b.params.ell * b.params.ell * b.params.ell}});
      std::cout << i << "  (" << lo.last_queries() << " queries)\n";
    };
  });

  auto* o_rev = od->add_subcommand("reversed", "Vertex of a relabeled copy holding a given index");
  o_rev->add_option("--graph", od_graph)->required();
  o_rev->add_option("--params", od_params)->required();
  o_rev->add_option("--index", od_index)->required()->check(CLI::PositiveNumber);
  o_rev->add_option("--start", od_start, "Any vertex of the copy to start from")->required()->check(CLI::PositiveNumber);
  out_opt(o_rev);
  o_rev->callback([&] {
    action = [&] {
      run.subcommand = "order reversed";
      LocalBundle b = load_bundle(od_params);
      Loaded g = load_graph(od_graph);
      require_derived(g, b.manifest_hash);
      Graph h = graph_from_document(g.doc);
      run.params = {{"graph_sha256", sha256_hex(to_json(g.doc).dump())}, {"params_hash", b.manifest_hash},
                    {"index", od_index}, {"start", od_start}};
      LocalGraphOracle orc(h);
      LocalOrderer lo(b.params, b.aug, orc);
      Vertex v = lo.reversed(od_index, od_start);
      run.write("result", {{"index", od_index}, {"vertex", v}, {"queries", lo.last_queries()},
                           {"path_length", lo.last_path_length()}});
      std::cout << v << "  (" << lo.last_queries() << " queries)\n";
    };
  });

  std::string od_structure;
  auto* o_rec = od->add_subcommand("recover", "Full ordering of a relabeled designated dense graph");
  o_rec->add_option("--graph", od_graph)->required();
  o_rec->add_option("--structure", od_structure)->required();
  out_opt(o_rec);
  o_rec->callback([&] {
    action = [&] {
      run.subcommand = "order recover";
      json sj = load_artifact(od_structure);
      EfficientSoGraph e = efficient_so_graph_random(sj.at("m").get<int>(), sj.at("s").get<int>(),
                                                     sj.at("structure_seed").get<std::uint64_t>());
      Loaded g = load_graph(od_graph);
      require_derived(g, sj.value("manifest_hash", std::string()));
      run.params = {{"graph_sha256", sha256_hex(to_json(g.doc).dump())},
                    {"structure_hash", sj.value("manifest_hash", std::string())}};
      Permutation phi = recover_ordering(graph_from_document(g.doc), e);
      run.write("ordering", {{"ordering", phi.images()}});
      std::cout << "recovered an ordering of " << phi.size() << " vertices\n";
    };
  });

  // ================================================================ reduce
  auto* rd = app.add_subcommand("reduce", "Encode strings as graphs and decode them back");
  rd->require_subcommand(1);
  std::string rd_string, rd_base, rd_graph, rd_gm, rd_g49m, rd_params;
  auto read_string = [&](const std::string& s) {
    if (s.rfind("@", 0) == 0) return parse_bits(read_file(s.substr(1)));
    return parse_bits(s);
  };

  auto* r_ebd = rd->add_subcommand("encode-bd", "Attach a wedge or triangle to every base vertex");
  r_ebd->add_option("--string", rd_string, "Bits, or @file")->required();
  r_ebd->add_option("--base", rd_base)->required();
  out_opt(r_ebd);
  r_ebd->callback([&] {
    action = [&] {
      run.subcommand = "reduce encode-bd";
      Loaded base = load_graph(rd_base);
      Bits s = read_string(rd_string);
      run.params = {{"string", bits_string(s)}, {"base_sha256", sha256_hex(to_json(base.doc).dump())}};
      Graph g = encode_string_bd(s, graph_from_document(base.doc));
      run.write("graph", {{"graph", to_json(to_document(g))}, {"source_manifest_hash", base.manifest_hash}});
    };
  });

  auto* r_dbd = rd->add_subcommand("decode-bd", "Recover the string from a relabeled encoding");
  r_dbd->add_option("--graph", rd_graph)->required();
  r_dbd->add_option("--base", rd_base, "Base graph (exact decoding)");
  r_dbd->add_option("--params", rd_params, "Local-code parameters (local decoding)");
  out_opt(r_dbd);
  r_dbd->callback([&] {
    if (rd_base.empty() == rd_params.empty())
      throw CLI::ValidationError("reduce decode-bd", "give exactly one of --base or --params");
    action = [&] {
      run.subcommand = "reduce decode-bd";
      Loaded g = load_graph(rd_graph);
      Graph h = graph_from_document(g.doc);
      Bits s;
      if (!rd_base.empty()) {
        Loaded base = load_graph(rd_base);
        Graph gb = graph_from_document(base.doc);
        run.params = {{"graph_sha256", sha256_hex(to_json(g.doc).dump())},
                      {"base_sha256", sha256_hex(to_json(base.doc).dump())}};
        s = decode_graph_bd(h, BdBase{&gb, nullptr, nullptr}, BdDecodeMode::Exact);
      } else {
        LocalBundle b = load_bundle(rd_params);
        run.params = {{"graph_sha256", sha256_hex(to_json(g.doc).dump())}, {"params_hash", b.manifest_hash}};
        s = decode_graph_bd(h, BdBase{&b.aug.graph, &b.params, &b.aug}, BdDecodeMode::Local);
      }
      run.write("string", {{"string", bits_string(s)}});
      std::cout << bits_string(s) << "\n";
    };
  });

  auto* r_ed = rd->add_subcommand("encode-dense", "Matrix string as bipartite edges between two dense graphs");
  r_ed->add_option("--string", rd_string, "m*m bits row-major, or @file")->required();
  r_ed->add_option("--gm", rd_gm)->required();
  r_ed->add_option("--g49m", rd_g49m)->required();
  out_opt(r_ed);
  r_ed->callback([&] {
    action = [&] {
      run.subcommand = "reduce encode-dense";
      Loaded a = load_graph(rd_gm), b = load_graph(rd_g49m);
      Bits s = read_string(rd_string);
      run.params = {{"string", bits_string(s)}, {"gm_sha256", sha256_hex(to_json(a.doc).dump())},
                    {"g49m_sha256", sha256_hex(to_json(b.doc).dump())}};
      Graph g = encode_string_dense(s, graph_from_document(a.doc), graph_from_document(b.doc));
      run.write("graph", graph_payload(g));
    };
  });

  auto* r_dd = rd->add_subcommand("decode-dense", "Recover the matrix string from a relabeled dense encoding");
  r_dd->add_option("--graph", rd_graph)->required();
  r_dd->add_option("--gm", rd_gm)->required();
  r_dd->add_option("--g49m", rd_g49m)->required();
  out_opt(r_dd);
  r_dd->callback([&] {
    action = [&] {
      run.subcommand = "reduce decode-dense";
      Loaded g = load_graph(rd_graph), a = load_graph(rd_gm), b = load_graph(rd_g49m);
      run.params = {{"graph_sha256", sha256_hex(to_json(g.doc).dump())},
                    {"gm_sha256", sha256_hex(to_json(a.doc).dump())},
                    {"g49m_sha256", sha256_hex(to_json(b.doc).dump())}};
      Bits s = decode_graph_dense(graph_from_document(g.doc), graph_from_document(a.doc), graph_from_document(b.doc));
      run.write("string", {{"string", bits_string(s)}});
      std::cout << bits_string(s) << "\n";
    };
  });

  // ================================================================ demo
  auto* demo = app.add_subcommand("demo", "Run the acceptance battery and print one line per criterion");
  std::vector<int> demo_only;
  int demo_threads = 1;
  demo->add_option("--only", demo_only, "Criterion numbers to run")->delimiter(',')->check(CLI::Range(1, 15));
  demo->add_option("--threads", demo_threads)->check(CLI::PositiveNumber);
  out_opt(demo);
  demo->callback([&] {
    action = [&] {
      run.subcommand = "demo";
      run.params = {{"only", demo_only}};
      SuiteOptions so;
      so.only = demo_only;
      so.threads = threads_from(demo_threads);
      so.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
      auto results = run_suite(so);
      json m = suite_manifest(results);
      run.write("suite", {{"suite", m}});
      std::cout << m["passed"].get<int>() << "/" << m["total"].get<int>() << " criteria passed\n";
      if (m["passed"] != m["total"]) exit_code = 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!action) return 2;
  try {
    action();
    run.finish();
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Rejected& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
