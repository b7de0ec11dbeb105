// Command-line front end for the relhom library.
//
// Exit codes: 0 affirmative/success, 1 negative verdict, 2 input error,
// 3 resource guard.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "relhom/relhom.hpp"

namespace {

using namespace relhom;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

Structure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  Structure s = parse_structure(in);
  if (s.name.empty()) s.name = std::filesystem::path(path).stem().string();
  return s;
}

FiniteLattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  return parse_lattice(in);
}

TypeSignature parse_type_string(const std::string& text) {
  TypeSignature sig;
  for (const auto& tok : detail::split_ws(text)) sig.arities.push_back(std::stoi(tok));
  sig.validate();
  return sig;
}

void emit(const Structure& s, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << serialize_structure(s);
  } else {
    std::ofstream out(out_path);
    if (!out) throw input_error("cannot write '" + out_path + "'");
    out << serialize_structure(s);
  }
}

void seed_limits_from_env() {
  if (const char* v = std::getenv("RELHOM_ENUM_CEILING")) limits().enum_ceiling = std::atoll(v);
  if (const char* v = std::getenv("RELHOM_PRODUCT_CEILING"))
    limits().product_ceiling = std::atoll(v);
  if (const char* v = std::getenv("RELHOM_EXPONENTIAL_CEILING"))
    limits().exponential_ceiling = std::atoll(v);
  if (const char* v = std::getenv("RELHOM_CANON_MAX")) limits().canon_max_vertices = std::atoi(v);
}

struct Options {
  bool manifest = false;
  int jobs = 1;  // accepted for compatibility; results are identical per job count
};

void kv(const Options& o, const std::string& key, const std::string& value) {
  if (o.manifest)
    std::cout << key << ": " << value << "\n";
  else
    std::cout << key << ": " << value << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  seed_limits_from_env();
  CLI::App app{"finite relational structures, homomorphisms, dualities"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--format-manifest,--manifest", opt.manifest, "machine-readable output");
  app.add_option("--jobs", opt.jobs, "parallelism hint (output is identical for any value)")
      ->check(CLI::PositiveNumber);

  int exit_code = kExitYes;

  // hom A B [--witness] [--count]
  {
    auto* c = app.add_subcommand("hom", "decide A -> B");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto witness = std::make_shared<bool>(false);
    auto count = std::make_shared<bool>(false);
    c->add_option("A", *a)->required();
    c->add_option("B", *b)->required();
    c->add_flag("--witness", *witness);
    c->add_flag("--count", *count);
    c->callback([&, a, b, witness, count] {
      Structure sa = load_structure(*a), sb = load_structure(*b);
      if (*count) {
        auto n = count_homs(sa, sb);
        kv(opt, "count", std::to_string(n));
        exit_code = n > 0 ? kExitYes : kExitNo;
        return;
      }
      auto h = find_hom(sa, sb);
      kv(opt, "hom", h ? "yes" : "no");
      if (h && *witness)
        for (int v = 0; v < sa.vertex_count(); ++v)
          std::cout << "map " << sa.vertices[v] << " -> " << sb.vertices[h->map[v]] << "\n";
      exit_code = h ? kExitYes : kExitNo;
    });
  }

  // core A [-o out]
  {
    auto* c = app.add_subcommand("core", "compute the core of A");
    auto a = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    c->add_option("A", *a)->required();
    c->add_option("-o,--output", *out);
    c->callback([&, a, out] {
      Structure sa = load_structure(*a);
      auto r = core(sa);
      r.core.name = sa.name + "_core";
      kv(opt, "core-size", std::to_string(r.core.vertex_count()));
      emit(r.core, *out);
    });
  }

  // iso A B
  {
    auto* c = app.add_subcommand("iso", "decide A iso B");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    c->add_option("A", *a)->required();
    c->add_option("B", *b)->required();
    c->callback([&, a, b] {
      bool ok = isomorphic(load_structure(*a), load_structure(*b));
      kv(opt, "iso", ok ? "yes" : "no");
      exit_code = ok ? kExitYes : kExitNo;
    });
  }

  // classify A [--shadow|--directed-shadow|--incidence]
  {
    auto* c = app.add_subcommand("classify", "structural flags of A");
    auto a = std::make_shared<std::string>();
    auto sh = std::make_shared<bool>(false);
    auto dsh = std::make_shared<bool>(false);
    auto inc = std::make_shared<bool>(false);
    c->add_option("A", *a)->required();
    c->add_flag("--shadow", *sh, "dump the shadow multigraph");
    c->add_flag("--directed-shadow", *dsh, "dump the directed shadow");
    c->add_flag("--incidence", *inc, "dump the incidence graph");
    c->callback([&, a, sh, dsh, inc] {
      Structure sa = load_structure(*a);
      auto f = classify(sa);
      kv(opt, "connected", f.connected ? "yes" : "no");
      kv(opt, "tree", f.tree ? "yes" : "no");
      kv(opt, "forest", f.forest ? "yes" : "no");
      kv(opt, "path", f.path ? "yes" : "no");
      kv(opt, "acyclic", f.acyclic ? "yes" : "no");
      kv(opt, "balanced", f.balanced ? "yes" : "no");
      if (*sh) std::cout << dump_multigraph(shadow(sa));
      if (*dsh) std::cout << dump_multigraph(directed_shadow(sa));
      if (*inc) std::cout << dump_multigraph(incidence_graph(sa));
    });
  }

  // sum A B ... / product A B ... / power C B
  {
    auto* c = app.add_subcommand("sum", "disjoint union");
    auto files = std::make_shared<std::vector<std::string>>();
    auto out = std::make_shared<std::string>();
    c->add_option("parts", *files)->required()->expected(-1);
    c->add_option("-o,--output", *out);
    c->callback([&, files, out] {
      std::vector<Structure> parts;
      for (const auto& f : *files) parts.push_back(load_structure(f));
      emit(sum(parts).sum, *out);
    });
  }
  {
    auto* c = app.add_subcommand("product", "categorical product");
    auto files = std::make_shared<std::vector<std::string>>();
    auto out = std::make_shared<std::string>();
    c->add_option("parts", *files)->required()->expected(-1);
    c->add_option("-o,--output", *out);
    c->callback([&, files, out] {
      std::vector<Structure> parts;
      for (const auto& f : *files) parts.push_back(load_structure(f));
      emit(product(parts).product, *out);
    });
  }
  {
    auto* c = app.add_subcommand("power", "exponential structure C^B");
    auto cf = std::make_shared<std::string>();
    auto bf = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    c->add_option("C", *cf)->required();
    c->add_option("B", *bf)->required();
    c->add_option("-o,--output", *out);
    c->callback([&, cf, bf, out] { emit(exponential(load_structure(*cf), load_structure(*bf)), *out); });
  }

  // dual-tree F [--method ...] [--raw] [-o out]
  {
    auto* c = app.add_subcommand("dual-tree", "dual of a tree");
    auto f = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>("bear");
    auto raw = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    c->add_option("F", *f)->required();
    c->add_option("--method", *method, "bear | mosquito | animal:bear | animal:mosquito");
    c->add_flag("--raw", *raw, "emit the raw construction, not its core");
    c->add_option("-o,--output", *out);
    c->callback([&, f, method, raw, out] {
      Structure sf = load_structure(*f);
      Structure d = [&] {
        if (*method == "bear") return *raw ? bear_dual(core(sf).core) : tree_dual(sf);
        if (*method == "mosquito") {
          Structure m = mosquito_dual(sf);
          return *raw ? m : core(m).core;
        }
        if (*method == "animal:bear") {
          Structure m = animal_dual(sf, bear_family());
          return *raw ? m : core(m).core;
        }
        if (*method == "animal:mosquito") {
          Structure m = animal_dual(sf, mosquito_family());
          return *raw ? m : core(m).core;
        }
        throw input_error("unknown method '" + *method + "'");
      }();
      if (d.name.empty()) d.name = "dual";
      emit(d, *out);
    });
  }

  // dual-set F1 F2 ... [-o dir]
  {
    auto* c = app.add_subcommand("dual-set", "transversal construction over forests");
    auto files = std::make_shared<std::vector<std::string>>();
    auto out = std::make_shared<std::string>();
    c->add_option("forests", *files)->required()->expected(-1);
    c->add_option("-o,--output-dir", *out, "write a directory manifest");
    c->callback([&, files, out] {
      std::vector<Structure> fset;
      for (const auto& f : *files) fset.push_back(load_structure(f));
      auto fd = dual_set(fset);
      kv(opt, "transversals", std::to_string(fd.transversals.size()));
      kv(opt, "duals", std::to_string(fd.duals.size()));
      if (out->empty()) {
        for (const auto& d : fd.duals) std::cout << serialize_structure(d) << "\n";
        return;
      }
      namespace fs = std::filesystem;
      fs::create_directories(*out);
      std::ofstream mf(fs::path(*out) / "manifest.txt");
      mf << "forests: " << fd.forbidden.size() << "\n";
      for (size_t k = 0; k < fd.forbidden.size(); ++k) {
        std::string fn = "forest_" + std::to_string(k) + ".st";
        std::ofstream(fs::path(*out) / fn) << serialize_structure(fd.forbidden[k]);
        mf << "forest " << k << ": " << fn << "\n";
      }
      mf << "components: " << fd.components.size() << "\n";
      for (size_t k = 0; k < fd.components.size(); ++k)
        mf << "component " << k << ": " << canonical_form(fd.components[k]) << "\n";
      mf << "transversals: " << fd.transversals.size() << "\n";
      for (size_t k = 0; k < fd.transversals.size(); ++k) {
        mf << "transversal " << k << ":";
        for (int cidx : fd.transversals[k]) mf << " " << cidx;
        mf << "\n";
      }
      for (size_t k = 0; k < fd.duals.size(); ++k) {
        std::string fn = "dual_" + std::to_string(k) + ".st";
        std::ofstream(fs::path(*out) / fn) << serialize_structure(fd.duals[k]);
        mf << "dual " << k << ": " << fn << "\n";
      }
    });
  }

  // check-duality --forbidden ... --dual ... [--oracle n]
  {
    auto* c = app.add_subcommand("check-duality", "verify a (finite) duality");
    auto fb = std::make_shared<std::vector<std::string>>();
    auto du = std::make_shared<std::vector<std::string>>();
    auto oracle = std::make_shared<int>(0);
    c->add_option("--forbidden", *fb)->required()->expected(-1);
    c->add_option("--dual", *du)->required()->expected(-1);
    c->add_option("--oracle", *oracle, "also run the bounded oracle at this size");
    c->callback([&, fb, du, oracle] {
      std::vector<Structure> fs, ds;
      for (const auto& f : *fb) fs.push_back(load_structure(f));
      for (const auto& d : *du) ds.push_back(load_structure(d));
      bool ok;
      if (fs.size() == 1 && ds.size() == 1) {
        ok = verify_duality_pair(fs[0], ds[0]);
      } else {
        std::vector<Structure> cores;
        for (const auto& f : fs) cores.push_back(core(f).core);
        auto fd = dual_set(cores);
        ok = fd.duals.size() == ds.size();
        std::vector<char> used(ds.size(), 0);
        for (const auto& d : fd.duals) {
          bool found = false;
          for (size_t k = 0; k < ds.size() && ok; ++k)
            if (!used[k] && isomorphic(core(ds[k]).core, d)) {
              used[k] = 1;
              found = true;
              break;
            }
          if (!found) {
            ok = false;
            break;
          }
        }
      }
      kv(opt, "duality", ok ? "yes" : "no");
      if (*oracle > 0) {
        bool brute = brute_finite_duality_check(fs, ds, *oracle);
        kv(opt, "oracle", brute ? "pass" : "fail");
        ok = ok && brute;
      }
      exit_code = ok ? kExitYes : kExitNo;
    });
  }

  // mac Q1 Q2 ... [--oracle n]
  {
    auto* c = app.add_subcommand("mac", "decide maximal antichain");
    auto files = std::make_shared<std::vector<std::string>>();
    auto oracle = std::make_shared<int>(0);
    c->add_option("elements", *files)->required()->expected(-1);
    c->add_option("--oracle", *oracle, "bounded maximality oracle size");
    c->callback([&, files, oracle] {
      std::vector<Structure> q;
      for (const auto& f : *files) q.push_back(load_structure(f));
      auto v = mac_decide(q);
      kv(opt, "mac",
         v.is_mac == MacAnswer::yes ? "yes" : v.is_mac == MacAnswer::no ? "no" : "unknown");
      for (const auto& r : v.certificate) kv(opt, "reason", r);
      if (v.is_mac == MacAnswer::yes) {
        std::string fp, dp;
        for (const auto& s : v.forest_part) fp += (fp.empty() ? "" : " ") + s.name;
        for (const auto& s : v.dual_part) dp += (dp.empty() ? "" : " ") + s.name;
        kv(opt, "split-forests", fp.empty() ? "-" : fp);
        kv(opt, "split-duals", dp.empty() ? "-" : dp);
      }
      if (*oracle > 0) {
        bool anti = is_antichain(q);
        bool maxi = anti && brute_maximality_check(q, *oracle);
        kv(opt, "oracle-antichain", anti ? "pass" : "fail");
        kv(opt, "oracle-maximality", maxi ? "pass" : "fail");
      }
      exit_code = v.is_mac == MacAnswer::yes ? kExitYes : kExitNo;
    });
  }

  // gcsp (--forbidden ...|--duals ...) G
  {
    auto* c = app.add_subcommand("gcsp", "generalized CSP membership");
    auto fb = std::make_shared<std::vector<std::string>>();
    auto du = std::make_shared<std::vector<std::string>>();
    auto g = std::make_shared<std::string>();
    c->add_option("--forbidden", *fb)->expected(-1);
    c->add_option("--duals", *du)->expected(-1);
    c->add_option("G", *g)->required();
    c->callback([&, fb, du, g] {
      Structure sg = load_structure(*g);
      if (!fb->empty() == !du->empty())
        throw input_error("gcsp: give exactly one of --forbidden / --duals");
      bool ok;
      if (!fb->empty()) {
        std::vector<Structure> fs;
        for (const auto& f : *fb) fs.push_back(load_structure(f));
        auto r = gcsp_via_forbidden(sg, fs);
        ok = r.admits;
        if (!ok) {
          kv(opt, "obstruction", fs[r.obstruction_index].name);
          const auto& f = fs[r.obstruction_index];
          for (int v = 0; v < f.vertex_count(); ++v)
            std::cout << "map " << f.vertices[v] << " -> " << sg.vertices[r.obstruction->map[v]]
                      << "\n";
        }
      } else {
        std::vector<Structure> ds;
        for (const auto& d : *du) ds.push_back(load_structure(d));
        ok = gcsp_direct(sg, ds);
      }
      kv(opt, "gcsp", ok ? "yes" : "no");
      exit_code = ok ? kExitYes : kExitNo;
    });
  }

  // bounds --type "d..." -d k
  {
    auto* c = app.add_subcommand("bounds", "tree-count and edge-count bounds");
    auto type = std::make_shared<std::string>();
    auto depth = std::make_shared<int>(0);
    c->add_option("--type", *type)->required();
    c->add_option("-d,--depth", *depth)->required();
    c->callback([&, type, depth] {
      auto [t, m] = tree_bounds(parse_type_string(*type), *depth);
      std::cout << "t=" << t << " m=" << m << "\n";
    });
  }

  // enumerate --type "d..." -n k [--iso] [--count-only]
  {
    auto* c = app.add_subcommand("enumerate", "stream structures up to n vertices");
    auto type = std::make_shared<std::string>();
    auto n = std::make_shared<int>(1);
    auto iso = std::make_shared<bool>(false);
    auto count_only = std::make_shared<bool>(false);
    c->add_option("--type", *type)->required();
    c->add_option("-n", *n)->required();
    c->add_flag("--iso", *iso);
    c->add_flag("--count-only", *count_only);
    c->callback([&, type, n, iso, count_only] {
      long long cnt = 0;
      enumerate_structures(parse_type_string(*type), *n, *iso, [&](const Structure& s) {
        ++cnt;
        if (!*count_only) std::cout << serialize_structure(s) << "\n";
        return true;
      });
      kv(opt, "count", std::to_string(cnt));
    });
  }

  // encode-3sat file.cnf [-o dir]
  {
    auto* c = app.add_subcommand("encode-3sat", "encode a 3-CNF as a CSP instance");
    auto file = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto solve = std::make_shared<bool>(false);
    c->add_option("cnf", *file)->required();
    c->add_option("-o,--output-dir", *out);
    c->add_flag("--solve", *solve, "also decide satisfiability via the homomorphism test");
    c->callback([&, file, out, solve] {
      std::ifstream in(*file);
      if (!in) throw input_error("cannot open '" + *file + "'");
      auto f = parse_dimacs_3cnf(in);
      auto [g, h] = encode_3sat(f);
      if (out->empty()) {
        std::cout << serialize_structure(g) << "\n" << serialize_structure(h);
      } else {
        namespace fs = std::filesystem;
        fs::create_directories(*out);
        std::ofstream(fs::path(*out) / "instance.st") << serialize_structure(g);
        std::ofstream(fs::path(*out) / "template.st") << serialize_structure(h);
      }
      if (*solve) {
        bool sat = hom_exists(g, h);
        kv(opt, "satisfiable", sat ? "yes" : "no");
        exit_code = sat ? kExitYes : kExitNo;
      }
    });
  }

  // fixture <kind> <params...> [-o out]
  {
    auto* c = app.add_subcommand("fixture", "generate a named structure");
    auto kind = std::make_shared<std::string>();
    auto params = std::make_shared<std::vector<int>>();
    auto type = std::make_shared<std::string>("2");
    auto out = std::make_shared<std::string>();
    c->add_option("kind", *kind,
                  "path | tournament | komarek-path | komarek-dual | complete | zigzag | bottom | "
                  "top | dstar")
        ->required();
    c->add_option("params", *params);
    auto pattern = std::make_shared<std::string>();
    c->add_option("--pattern", *pattern, "orientation pattern for zigzag");
    c->add_option("--type", *type, "signature for bottom/top/dstar");
    c->add_option("-o,--output", *out);
    c->callback([&, kind, params, type, out, pattern] {
      Structure s = [&] {
        if (*kind == "path") return gen_fixture(FixtureKind::path, *params);
        if (*kind == "tournament") return gen_fixture(FixtureKind::tournament, *params);
        if (*kind == "komarek-path") return gen_fixture(FixtureKind::komarek_path, *params);
        if (*kind == "komarek-dual") return gen_fixture(FixtureKind::komarek_dual, *params);
        if (*kind == "complete") return gen_fixture(FixtureKind::complete, *params);
        if (*kind == "zigzag") return zigzag_path(*pattern);
        if (*kind == "bottom")
          return gen_fixture(FixtureKind::bottom, {}, parse_type_string(*type));
        if (*kind == "top") return gen_fixture(FixtureKind::top, {}, parse_type_string(*type));
        if (*kind == "dstar") return d_star(parse_type_string(*type));
        throw input_error("unknown fixture kind '" + *kind + "'");
      }();
      emit(s, *out);
    });
  }

  // lattice <subverb> ...
  {
    auto* c = app.add_subcommand("lattice", "finite lattice engine");
    c->require_subcommand(1);

    auto* chk = c->add_subcommand("check", "lattice / distributivity / Heyting report");
    auto lf = std::make_shared<std::string>();
    chk->add_option("L", *lf)->required();
    chk->callback([&, lf] {
      auto l = load_lattice(*lf);
      kv(opt, "lattice", "yes");
      kv(opt, "elements", std::to_string(l.size()));
      auto dist = is_distributive(l);
      kv(opt, "distributive", dist.distributive ? "yes" : "no");
      if (!dist.distributive)
        kv(opt, "witness",
           l.name(dist.x) + " " + l.name(dist.y) + " " + l.name(dist.z));
      kv(opt, "heyting", heyting_table(l) ? "yes" : "no");
    });

    auto* dp = c->add_subcommand("duality-pairs", "all lattice duality pairs");
    auto lf2 = std::make_shared<std::string>();
    dp->add_option("L", *lf2)->required();
    dp->callback([&, lf2] {
      auto l = load_lattice(*lf2);
      for (auto [f, d] : lattice_duality_pairs(l))
        std::cout << "pair " << l.name(f) << " " << l.name(d) << "\n";
    });

    auto* gp = c->add_subcommand("gaps", "all gaps (cover pairs)");
    auto lf3 = std::make_shared<std::string>();
    gp->add_option("L", *lf3)->required();
    gp->callback([&, lf3] {
      auto l = load_lattice(*lf3);
      for (auto [a, b] : lattice_gaps(l)) std::cout << "gap " << l.name(a) << " " << l.name(b) << "\n";
    });

    auto* cn = c->add_subcommand("connected", "connected elements and decompositions");
    auto lf4 = std::make_shared<std::string>();
    cn->add_option("L", *lf4)->required();
    cn->callback([&, lf4] {
      auto l = load_lattice(*lf4);
      std::string names;
      for (int x : connected_elements(l)) names += (names.empty() ? "" : " ") + l.name(x);
      kv(opt, "connected", names);
      for (int x = 0; x < l.size(); ++x) {
        auto d = connected_decomposition(l, x);
        std::string parts;
        for (int p : d.parts) parts += (parts.empty() ? "" : " ") + l.name(p);
        kv(opt, "decomposition " + l.name(x), parts + (d.join_is_x ? "" : " (incomplete)"));
      }
    });

    auto* td = c->add_subcommand("dual", "transversal construction over F");
    auto lf5 = std::make_shared<std::string>();
    auto felems = std::make_shared<std::vector<std::string>>();
    td->add_option("L", *lf5)->required();
    td->add_option("-f,--forbidden", *felems)->required()->expected(-1);
    td->callback([&, lf5, felems] {
      auto l = load_lattice(*lf5);
      std::vector<int> f;
      std::vector<std::vector<int>> decomps;
      for (const auto& nm : *felems) {
        int x = l.index_of(nm);
        f.push_back(x);
        auto d = connected_decomposition(l, x);
        if (!d.join_is_x)
          throw input_error("element '" + nm + "' has no canonical connected decomposition");
        decomps.push_back(d.parts);
      }
      auto res = lattice_transversal_dual(l, f, decomps);
      kv(opt, "transversals", std::to_string(res.transversals.size()));
      std::string duals;
      for (int d : res.duals) duals += (duals.empty() ? "" : " ") + l.name(d);
      kv(opt, "duals", duals);
      kv(opt, "sweep", res.sweep_ok ? "pass" : "fail");
      exit_code = res.sweep_ok ? kExitYes : kExitNo;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  } catch (const guard_error& e) {
    std::cerr << e.what() << "\n";
    return kExitGuard;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return exit_code;
}
