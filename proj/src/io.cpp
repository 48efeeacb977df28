#include "rpkh/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace rpkh {

namespace {

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw InputError(std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

Port parse_port(const json& p, const std::map<int, int>& cross) {
  if (!p.is_object()) throw InputError("port must be an object");
  if (p.contains("wall")) return Port::wall(get_int(p, "wall"));
  int id = get_int(p, "crossing");
  auto it = cross.find(id);
  if (it == cross.end()) throw InputError("unknown crossing id " + std::to_string(id));
  int slot = get_int(p, "slot");
  if (slot < 0 || slot > 3) throw InputError("slot out of range");
  return Port::cross(it->second, slot);
}

json port_json(const Port& p, const ProjDiagram& d) {
  if (p.kind == Port::Wall) return {{"wall", p.index}};
  return {{"crossing", d.crossing_ids()[p.index]}, {"slot", p.slot}};
}

}  // namespace

BraidInput braid_from_json(const json& j) {
  BraidInput b;
  b.strands = get_int(j, "strands");
  if (!j.contains("word") || !j["word"].is_array()) throw InputError("braid needs a 'word' array");
  for (auto& g : j["word"]) {
    if (!g.is_number_integer()) throw InputError("braid generators must be integers");
    b.word.push_back(g.get<int>());
  }
  std::string cl = j.value("closure", "projective");
  if (cl != "projective" && cl != "planar") throw InputError("closure must be 'projective' or 'planar'");
  b.projective = cl == "projective";
  return b;
}

BraidInput parse_braid(const std::string& text, bool projective) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("braid must look like 'm: g1 g2 ...'");
  BraidInput b;
  b.projective = projective;
  try {
    size_t used = 0;
    std::string head = text.substr(0, colon);
    b.strands = std::stoi(head, &used);
    if (head.find_first_not_of(" \t", used) != std::string::npos) throw InputError("bad strand count");
  } catch (const std::logic_error&) {
    throw InputError("bad strand count in braid");
  }
  std::istringstream is(text.substr(colon + 1));
  std::string tok;
  while (is >> tok) {
    size_t used = 0;
    int g = 0;
    try {
      g = std::stoi(tok, &used);
    } catch (const std::logic_error&) {
      throw InputError("bad braid generator '" + tok + "'");
    }
    if (used != tok.size()) throw InputError("bad braid generator '" + tok + "'");
    b.word.push_back(g);
  }
  return b;
}

ProjDiagram diagram_from_json(const json& j) {
  if (!j.is_object()) throw InputError("diagram must be a JSON object");
  try {
    if (j.contains("word")) return from_braid(braid_from_json(j));
    int wp = get_int(j, "wall_points");
    if (wp < 0 || wp % 2) throw InputError("wall_points must be even and non-negative");
    std::vector<int> ids;
    std::map<int, int> cross;
    for (auto& c : j.value("crossings", json::array())) {
      int id = get_int(c, "id");
      if (!cross.emplace(id, static_cast<int>(ids.size())).second) throw InputError("duplicate crossing id");
      ids.push_back(id);
    }
    std::vector<Arc> arcs;
    bool essential_loop = false;
    for (auto& a : j.value("arcs", json::array())) {
      Arc arc;
      arc.id = get_int(a, "id");
      if (a.contains("loop")) {
        std::string kind = a["loop"].get<std::string>();
        if (kind == "essential") {
          if (wp != 0) throw InputError("an essential free loop needs a diagram without wall points");
          if (essential_loop) throw InputError("at most one essential free loop");
          essential_loop = true;
          arc.from = Port::wall(0);
          arc.to = Port::wall(1);
        } else if (kind != "trivial") {
          throw InputError("loop must be 'trivial' or 'essential'");
        }
      } else {
        if (!a.contains("from") || !a.contains("to")) throw InputError("arc needs 'from' and 'to'");
        arc.from = parse_port(a["from"], cross);
        arc.to = parse_port(a["to"], cross);
      }
      arcs.push_back(arc);
    }
    if (essential_loop) wp = 2;
    return ProjDiagram(wp, ids, arcs);
  } catch (const DiagramError& e) {
    throw InputError(e.what());
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
}

json diagram_to_json(const ProjDiagram& d) {
  json cr = json::array();
  for (int id : d.crossing_ids()) cr.push_back({{"id", id}});
  json arcs = json::array();
  for (auto& a : d.arcs()) {
    if (a.free_loop())
      arcs.push_back({{"id", a.id}, {"loop", "trivial"}});
    else
      arcs.push_back({{"id", a.id}, {"from", port_json(a.from, d)}, {"to", port_json(a.to, d)}});
  }
  return {{"wall_points", d.wall_points()}, {"crossings", cr}, {"arcs", arcs}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

ProjDiagram load_diagram_file(const std::string& path) { return diagram_from_json(load_json_file(path)); }

namespace {

Movie movie_from_object(const json& j) {
  Movie mv;
  if (!j.contains("host")) throw InputError("movie needs a 'host' diagram");
  mv.host = diagram_from_json(j["host"]);
  const ProjDiagram& d = mv.host;
  std::map<int, int> cross, arc;
  for (int c = 0; c < d.num_crossings(); ++c) cross[d.crossing_ids()[c]] = c;
  for (int a = 0; a < d.num_arcs(); ++a) arc[d.arc(a).id] = a;
  auto lookup = [](const std::map<int, int>& m, int id, const char* what) {
    auto it = m.find(id);
    if (it == m.end()) throw InputError(std::string("unknown ") + what + " id " + std::to_string(id));
    return it->second;
  };
  mv.initial.fixed.assign(d.num_crossings(), -1);
  mv.initial.hidden.assign(d.num_arcs(), 0);
  json init = j.value("initial", json::object());
  json smoothed = init.value("smoothed", json::object());
  for (auto& [k, v] : smoothed.items()) {
    int r = v.get<int>();
    if (r != 0 && r != 1) throw InputError("smoothing must be 0 or 1");
    mv.initial.fixed[lookup(cross, std::stoi(k), "crossing")] = static_cast<int8_t>(r);
  }
  json hidden = init.value("hidden_loops", json::array());
  for (auto& v : hidden) mv.initial.hidden[lookup(arc, v.get<int>(), "arc")] = 1;
  if (j.contains("orientation")) {
    std::vector<int8_t> dir(d.num_arcs(), 1);
    for (auto& [k, v] : j["orientation"].items()) {
      int s = v.get<int>();
      if (s != 1 && s != -1) throw InputError("orientation entries must be +1 or -1");
      dir[lookup(arc, std::stoi(k), "arc")] = static_cast<int8_t>(s);
    }
    mv.orientation = dir;
  }
  json steps = j.value("steps", json::array());
  for (auto& st : steps) {
    std::string kind = st.value("move", "");
    MorseStep ms;
    if (kind == "saddle") {
      ms = {MorseStep::Saddle, lookup(cross, get_int(st, "crossing"), "crossing")};
    } else if (kind == "birth" || kind == "death") {
      ms = {kind == "birth" ? MorseStep::Birth : MorseStep::Death, lookup(arc, get_int(st, "loop"), "arc")};
    } else {
      throw InputError("unknown move '" + kind + "'");
    }
    mv.steps.push_back(ms);
  }
  return mv;
}

}  // namespace

std::vector<Movie> movies_from_json(const json& j) {
  try {
    std::vector<Movie> out;
    if (j.contains("segments")) {
      for (auto& s : j["segments"]) out.push_back(movie_from_object(s));
    } else {
      out.push_back(movie_from_object(j));
    }
    if (out.empty()) throw InputError("empty movie");
    return out;
  } catch (const json::exception& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad id: ") + e.what());
  }
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

json sreport_json(const SReport& r) {
  json j;
  j["class"] = r.link_class;
  j["components"] = r.components;
  j["s"] = r.s;
  j["s_min"] = r.s_min;
  j["q_plus"] = r.q_plus;
  j["q_minus"] = r.q_minus;
  json st = json::object();
  for (auto& t : r.s_tau) {
    if (t.s.get_den() == 1)
      st[rational_str(t.tau)] = t.s.get_num().get_si();
    else
      st[rational_str(t.tau)] = rational_str(t.s);
  }
  j["s_tau"] = st;
  return j;
}

json kh_json(const std::vector<HomologyEntry>& table) {
  json out = json::array();
  for (auto& e : table) {
    json tor = json::array();
    for (auto& t : e.torsion) tor.push_back(t.get_str());
    out.push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"rank", e.rank}, {"torsion", tor}});
  }
  return out;
}

json jones_json(const LaurentPoly& p) {
  json j = json::object();
  for (auto [e, v] : p.c) j[std::to_string(e)] = v;
  return j;
}

json audit_json(const MovieAudit& a) {
  json steps = json::array();
  for (auto& s : a.steps) {
    json e = {{"move", kind_name(s.step.kind)}, {"index", s.step.index}, {"orientable", s.orientable},
              {"chain_map", s.chain_map}};
    e["filtration_degree"] = s.degree ? json(*s.degree) : json("zero map");
    steps.push_back(e);
  }
  json j = {{"steps", steps}, {"chi", a.chi}, {"global_orientation", a.global_orientation}, {"s0", a.s0},
            {"s1", a.s1}, {"verdict", a.verdict.message()}, {"ok", a.ok()}};
  j["composite_degree"] = a.composite_degree ? json(*a.composite_degree) : json("zero map");
  return j;
}

namespace {

std::string monomial_str(const Monomial& m) {
  std::string s = m.sign < 0 ? "-" : "";
  if (m.a == 0 && m.b == 0) return s + "1";
  if (m.a) s += m.a == 1 ? "s" : "s^" + std::to_string(m.a);
  if (m.b) s += m.b == 1 ? "t" : "t^" + std::to_string(m.b);
  return s;
}

}  // namespace

json complex_dump(const Complex& cx) {
  json gens = json::array(), diff = json::array();
  for (int i = cx.min_degree(); i <= cx.max_degree(); ++i) {
    for (int g = 0; g < cx.dim(i); ++g) {
      GenInfo gi = cx.generator(i, g);
      gens.push_back({{"vertex", cx.full_vertex(gi.vertex)}, {"labels", gi.labels}, {"i", gi.i}, {"j", gi.j}, {"k", gi.k}});
    }
    for (auto& e : cx.differential(i)) {
      GenInfo from = cx.generator(i, e.col), to = cx.generator(i + 1, e.row);
      diff.push_back({{"from", {cx.full_vertex(from.vertex), from.labels}},
                      {"to", {cx.full_vertex(to.vertex), to.labels}},
                      {"coefficient", monomial_str(e.coeff)}});
    }
  }
  return {{"generators", gens}, {"differential", diff}};
}

}  // namespace rpkh
