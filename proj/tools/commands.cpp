#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <future>
#include <ostream>
#include <sstream>

#include "rpkh/cobord.hpp"
#include "rpkh/invariants.hpp"
#include "rpkh/io.hpp"
#include "rpkh/lift.hpp"

namespace rpkh::cli {

namespace {

struct Config {
  std::string input;
  std::string braid;
  std::string closure = "projective";
  std::string coefficients = "z";
  std::string tau = "0,1/2,1,2";
  bool json = false;
  bool verify_d2 = false;
  bool oracle = false;
  int max_crossings = 14;
  uint64_t seed = 1;
  int jobs = 1;
  bool with_s = false;
  std::string form = "flip";
  std::optional<int> s0, s1, chi;
};

struct Input {
  ProjDiagram diagram;
  std::optional<BraidInput> braid;
};

Input read_input(const Config& cfg) {
  if (!cfg.braid.empty() && !cfg.input.empty()) throw InputError("give either an input file or --braid, not both");
  if (cfg.closure != "projective" && cfg.closure != "planar") throw InputError("--closure must be projective or planar");
  Input in;
  if (!cfg.braid.empty()) {
    in.braid = parse_braid(cfg.braid, cfg.closure == "projective");
  } else {
    if (cfg.input.empty()) throw InputError("no input given");
    std::string path = cfg.input.rfind("file:", 0) == 0 ? cfg.input.substr(5) : cfg.input;
    json j = load_json_file(path);
    if (j.is_object() && j.contains("word")) in.braid = braid_from_json(j);
    else in.diagram = diagram_from_json(j);
  }
  if (in.braid) {
    try {
      in.diagram = from_braid(*in.braid);
    } catch (const DiagramError& e) {
      throw InputError(e.what());
    }
  }
  if (in.diagram.num_crossings() > cfg.max_crossings)
    throw InputError(std::to_string(in.diagram.num_crossings()) + " crossings exceed the limit of " +
                     std::to_string(cfg.max_crossings) + " (raise it with --max-crossings)");
  return in;
}

std::vector<mpq_class> parse_taus(const std::string& s) {
  std::vector<mpq_class> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
    if (tok.empty()) continue;
    mpq_class q;
    if (q.set_str(tok, 10) != 0) throw InputError("bad tau value '" + tok + "'");
    q.canonicalize();
    if (q < 0 || q > 2) throw InputError("tau must lie in [0, 2]");
    out.push_back(q);
  }
  return out;
}

void maybe_verify(const DiagramView& v, const Config& cfg) {
  if (cfg.verify_d2) Complex(v).verify_d2(CoeffSpec::generic());
}

void check_jones_oracle(const ProjDiagram& d, const LaurentPoly& j) {
  if (!(bracket_oracle(d) == j)) throw InvariantError("Euler characteristic disagrees with the state-sum oracle");
}

std::string s_text(const SReport& r) {
  std::ostringstream os;
  os << "s = " << r.s << "\n";
  os << "class " << r.link_class << ", components " << r.components << ", s_min " << r.s_min << ", q+ " << r.q_plus
     << ", q- " << r.q_minus << "\n";
  for (auto& t : r.s_tau) os << "s_tau(" << t.tau.get_str() << ") = " << t.s.get_str() << "\n";
  return os.str();
}

std::string kh_text(const std::vector<HomologyEntry>& t) {
  std::ostringstream os;
  os << "i\tj\tk\trank\ttorsion\n";
  for (auto& e : t) {
    os << e.i << '\t' << e.j << '\t' << e.k << '\t' << e.rank << '\t';
    for (size_t x = 0; x < e.torsion.size(); ++x) os << (x ? "," : "") << "Z/" << e.torsion[x].get_str();
    os << '\n';
  }
  return os.str();
}

json full_result(const ProjDiagram& d, const std::vector<mpq_class>& taus, bool integers) {
  DiagramView v(d);
  json j = sreport_json(s_invariant(v, {}, taus));
  j["lee_dim"] = lee_report(v).dim;
  j["kh"] = kh_json(khovanov_table(v, integers));
  j["jones"] = jones_json(drobotukhina(v));
  return j;
}

int cmd_s(const Config& cfg, std::ostream& out) {
  Input in = read_input(cfg);
  DiagramView v(in.diagram);
  maybe_verify(v, cfg);
  SReport r = s_invariant(v, {}, parse_taus(cfg.tau));
  if (cfg.oracle && in.diagram.n_minus() == 0 && r.s != positive_formula(in.diagram))
    throw InvariantError("s disagrees with the positive-diagram formula");
  if (cfg.json)
    out << sreport_json(r).dump() << "\n";
  else
    out << s_text(r);
  return 0;
}

int cmd_kh(const Config& cfg, std::ostream& out) {
  Input in = read_input(cfg);
  if (cfg.coefficients != "z" && cfg.coefficients != "q") throw InputError("--coefficients must be z or q");
  DiagramView v(in.diagram);
  maybe_verify(v, cfg);
  auto t = khovanov_table(v, cfg.coefficients == "z");
  if (cfg.json)
    out << json{{"kh", kh_json(t)}}.dump() << "\n";
  else
    out << kh_text(t);
  return 0;
}

int cmd_lee(const Config& cfg, std::ostream& out) {
  Input in = read_input(cfg);
  DiagramView v(in.diagram);
  maybe_verify(v, cfg);
  LeeReport r = lee_report(v);
  if (r.dim != r.orientations) throw InvariantError("Lee homology dimension is not 2^components");
  if (!r.independent) throw InvariantError("Lee generators are dependent in homology");
  if (cfg.json)
    out << json{{"lee_dim", r.dim}, {"orientations", r.orientations}, {"independent", r.independent},
                {"adjoint_cycles", r.adjoint_cycles}}
               .dump()
        << "\n";
  else
    out << "dim LH = " << r.dim << " (2^" << in.diagram.components() << " orientations), generators "
        << (r.independent ? "independent" : "dependent") << "\n";
  return 0;
}

int cmd_jones(const Config& cfg, std::ostream& out) {
  Input in = read_input(cfg);
  DiagramView v(in.diagram);
  LaurentPoly j = drobotukhina(v);
  if (cfg.oracle) check_jones_oracle(in.diagram, j);
  if (cfg.json)
    out << json{{"jones", jones_json(j)}}.dump() << "\n";
  else
    out << "J = " << j.str() << "\n";
  return 0;
}

int cmd_lift(const Config& cfg, std::ostream& out) {
  Input in = read_input(cfg);
  if (!in.braid || !in.braid->projective) throw InputError("lift needs a braid with projective closure");
  if (cfg.form != "flip" && cfg.form != "halftwist") throw InputError("--form must be flip or halftwist");
  ProjDiagram lifted = lift_diagram(*in.braid, cfg.form == "flip" ? LiftForm::Flip : LiftForm::HalfTwist);
  json j = {{"diagram", diagram_to_json(lifted)}};
  if (cfg.with_s) {
    DiagramView v(lifted);
    maybe_verify(v, cfg);
    j["result"] = sreport_json(s_invariant(v, {}, parse_taus(cfg.tau)));
  }
  if (cfg.json) {
    out << j.dump() << "\n";
  } else {
    out << j["diagram"].dump() << "\n";
    if (cfg.with_s) out << "s = " << j["result"]["s"].get<int>() << "\n";
  }
  return 0;
}

int cmd_check(const Config& cfg, std::ostream& out) {
  Input in = read_input(cfg);
  const ProjDiagram& d = in.diagram;
  DiagramView v(d);
  const auto taus = parse_taus(cfg.tau);
  json checks = json::object();
  if (cfg.verify_d2 || d.num_crossings() <= 10) {
    Complex(v).verify_d2(CoeffSpec::generic());
    checks["d2"] = "ok";
  } else {
    checks["d2"] = "skipped";
  }
  json res = full_result(d, taus, cfg.coefficients != "q");
  const int s = res["s"].get<int>();
  if (res["lee_dim"].get<int>() != (1 << d.components())) throw InvariantError("Lee homology dimension is not 2^components");
  checks["lee_dim"] = "ok";
  for (auto& [k, val] : res["s_tau"].items())
    if (!val.is_number_integer() || val.get<int>() != s) throw InvariantError("s_tau differs from s at tau = " + k);
  checks["s_tau"] = "ok";
  ResolutionChoices rc;
  rc.order = ResolutionChoices::RandomOrder;
  rc.orient = ResolutionChoices::RandomOrient;
  rc.seed = cfg.seed;
  SReport alt = s_invariant(v, rc);
  if (alt.s != s || alt.q_plus != res["q_plus"].get<int>() || alt.q_minus != res["q_minus"].get<int>())
    throw InvariantError("s depends on the resolution choices");
  checks["choices"] = "ok";
  check_jones_oracle(d, drobotukhina(v));
  checks["jones_oracle"] = "ok";
  if (d.n_minus() == 0) {
    if (positive_formula(d) != s) throw InvariantError("s disagrees with the positive-diagram formula");
    checks["positive_formula"] = "ok";
  }
  res["checks"] = checks;
  res["seed"] = cfg.seed;
  if (cfg.json) {
    out << res.dump() << "\n";
  } else {
    out << "seed " << cfg.seed << "\n";
    out << "s = " << s << ", class " << res["class"] << ", components " << res["components"] << ", dim LH = "
        << res["lee_dim"] << "\n";
    for (auto& [k, val] : checks.items()) out << k << ": " << val.get<std::string>() << "\n";
  }
  return 0;
}

int cmd_cobordism(const Config& cfg, std::ostream& out) {
  if (cfg.input.empty()) {
    if (!cfg.s0 || !cfg.s1 || !cfg.chi) throw InputError("give a movie file or all of --s0, --s1, --chi");
    GenusVerdict g = genus_bound_check(*cfg.s0, *cfg.s1, *cfg.chi);
    if (cfg.json)
      out << json{{"s0", g.s0}, {"s1", g.s1}, {"chi", g.chi}, {"verdict", g.message()}}.dump() << "\n";
    else
      out << "s1 - s0 = " << g.s1 - g.s0 << ", chi = " << g.chi << ": " << g.message() << "\n";
    return 0;
  }
  std::string path = cfg.input.rfind("file:", 0) == 0 ? cfg.input.substr(5) : cfg.input;
  auto movies = movies_from_json(load_json_file(path));
  for (auto& m : movies)
    if (m.host.num_crossings() > cfg.max_crossings) throw InputError("host diagram exceeds --max-crossings");
  MovieAudit a = audit_movie(movies);
  if (cfg.json) {
    out << audit_json(a).dump() << "\n";
  } else {
    for (auto& s : a.steps) {
      out << kind_name(s.step.kind) << " " << s.step.index << ": chain map " << (s.chain_map ? "yes" : "NO")
          << ", filtration degree ";
      if (s.degree)
        out << *s.degree;
      else
        out << "undefined (zero map)";
      if (!s.orientable) out << ", non-orientable";
      out << "\n";
    }
    out << "chi = " << a.chi << ", composite degree ";
    if (a.composite_degree)
      out << *a.composite_degree;
    else
      out << "undefined (zero map)";
    out << "\ns0 = " << a.s0 << ", s1 = " << a.s1 << ": " << a.verdict.message() << "\n";
  }
  if (!a.ok()) throw InvariantError("movie audit failed");
  if (a.verdict.applicable && !a.verdict.allowed) throw InvariantError("computed s values violate the genus bound");
  return 0;
}

int cmd_batch(const Config& cfg, std::ostream& out) {
  namespace fs = std::filesystem;
  if (cfg.input.empty() || !fs::is_directory(cfg.input)) throw InputError("batch needs a directory");
  std::vector<fs::path> files;
  for (auto& e : fs::directory_iterator(cfg.input))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  const auto taus = parse_taus(cfg.tau);
  const bool integers = cfg.coefficients != "q";
  auto work = [&](const fs::path& p) -> std::pair<int, std::string> {
    json line = {{"file", p.filename().string()}};
    int code = 0;
    try {
      ProjDiagram d = load_diagram_file(p.string());
      if (d.num_crossings() > cfg.max_crossings) throw InputError("too many crossings");
      json res = full_result(d, taus, integers);
      for (auto& [k, v] : res.items()) line[k] = v;
    } catch (const InputError& e) {
      line["error"] = e.what(), code = 1;
    } catch (const DiagramError& e) {
      line["error"] = e.what(), code = 1;
    } catch (const std::exception& e) {
      line["error"] = e.what(), code = 2;
    }
    return {code, line.dump()};
  };
  const size_t jobs = static_cast<size_t>(std::max(1, cfg.jobs));
  int worst = 0;
  for (size_t start = 0; start < files.size(); start += jobs) {
    std::vector<std::future<std::pair<int, std::string>>> fut;
    for (size_t i = start; i < std::min(files.size(), start + jobs); ++i)
      fut.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, work, files[i]));
    for (auto& f : fut) {
      auto [code, text] = f.get();
      worst = std::max(worst, code);
      out << text << "\n";
    }
  }
  return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Khovanov, Lee and s-invariants of links in RP3"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* sub, bool input = true) {
    if (input) {
      sub->add_option("input", cfg.input, "diagram or braid JSON file (optionally prefixed by file:)");
      sub->add_option("--braid", cfg.braid, "inline braid, e.g. \"2: -1 -1\"");
      sub->add_option("--closure", cfg.closure, "projective or planar");
    }
    sub->add_option("--coefficients", cfg.coefficients, "z or q");
    sub->add_option("--tau", cfg.tau, "comma-separated tau values in [0,2]");
    sub->add_flag("--json", cfg.json, "machine-readable output");
    sub->add_flag("--verify-d2", cfg.verify_d2, "check d^2 = 0 symbolically");
    sub->add_flag("--oracle", cfg.oracle, "cross-check against independent oracles");
    sub->add_option("--max-crossings", cfg.max_crossings, "crossing guard");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
  };
  std::vector<std::pair<CLI::App*, int (*)(const Config&, std::ostream&)>> subs;
  auto add = [&](const char* name, const char* help, int (*fn)(const Config&, std::ostream&)) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    subs.push_back({s, fn});
    return s;
  };
  add("s", "s-invariant", cmd_s);
  add("kh", "Khovanov homology table", cmd_kh);
  add("lee", "Lee homology report", cmd_lee);
  add("jones", "Jones-type polynomial from the Euler characteristic", cmd_jones);
  auto* lift = add("lift", "lifted planar diagram", cmd_lift);
  lift->add_flag("--with-s", cfg.with_s, "also compute s of the lift");
  lift->add_option("--form", cfg.form, "flip or halftwist");
  add("check", "full invariant suite", cmd_check);
  auto* cob = add("check-cobordism", "audit a movie of Morse moves", cmd_cobordism);
  cob->add_option("--s0", cfg.s0);
  cob->add_option("--s1", cfg.s1);
  cob->add_option("--chi", cfg.chi);
  auto* batch = add("batch", "JSON lines for every *.json in a directory", cmd_batch);
  batch->add_option("-j,--jobs", cfg.jobs, "worker count");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    for (auto& [sub, fn] : subs)
      if (sub->parsed()) return fn(cfg, out);
    return 1;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const DiagramError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const D2Error& e) {
    err << "internal failure (d^2): " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "internal failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace rpkh::cli
