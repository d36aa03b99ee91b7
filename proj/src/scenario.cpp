#include "lrgeom/scenario.hpp"

#include <fstream>
#include <sstream>

namespace lrgeom {

using nlohmann::json;

const Golden& Scenario::golden_value(const std::string& key) const {
  for (const auto& g : golden)
    if (g.key == key) return g;
  throw DomainError("scenario " + name + " has no golden value '" + key + "'");
}

namespace {

// ------------------------------------------------------------------ writing

json poly_list(const std::vector<Poly>& ps, const VarTable& v) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(to_string(p, v));
  return a;
}

json matrix_json(const Mat& m, const VarTable& v) { return matrix_strings(m, v); }

json columns_json(const std::vector<std::vector<Poly>>& cols, const VarTable& v) {
  json a = json::array();
  for (const auto& c : cols) a.push_back(poly_list(c, v));
  return a;
}

// ------------------------------------------------------------------ reading

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& field(const json& obj, const std::string& ptr, const std::string& key) {
  if (!obj.is_object()) throw ScenarioError(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError(child(ptr, key), "missing field");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string get_string(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw ScenarioError(ptr, "expected a string");
  return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& ptr, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw ScenarioError(ptr, "expected an array");
  if (size && j.size() != *size)
    throw ScenarioError(ptr, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()));
  return j;
}

std::vector<std::string> string_list(const json& j, const std::string& ptr) {
  std::vector<std::string> out;
  const auto& a = get_array(j, ptr);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_string(a[i], child(ptr, i)));
  return out;
}

template <class F>
auto guarded(const std::string& ptr, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioError(ptr, e.what());
  }
}

Poly poly_at(const json& j, const std::string& ptr, const VarTable& v) {
  std::string s = get_string(j, ptr);
  return guarded(ptr, [&] { return parse_poly(s, v); });
}

Frac frac_at(const json& j, const std::string& ptr, const VarTable& v) {
  std::string s = get_string(j, ptr);
  return guarded(ptr, [&] { return parse_frac(s, v); });
}

std::vector<Poly> polys_at(const json& j, const std::string& ptr, const VarTable& v,
                           std::optional<std::size_t> size = std::nullopt) {
  const auto& a = get_array(j, ptr, size);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(poly_at(a[i], child(ptr, i), v));
  return out;
}

Mat matrix_at(const json& j, const std::string& ptr, const VarTable& v, std::size_t rows,
              std::optional<std::size_t> cols = std::nullopt) {
  const auto& a = get_array(j, ptr, rows);
  std::size_t c = cols ? *cols : (rows ? get_array(a[0], child(ptr, 0)).size() : 0);
  Mat m(rows, c);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = get_array(a[r], child(ptr, r), c);
    for (std::size_t k = 0; k < c; ++k) m(r, k) = frac_at(row[k], child(child(ptr, r), k), v);
  }
  return m;
}

Mat square_matrix_at(const json& j, const std::string& ptr, const VarTable& v) {
  std::size_t n = get_array(j, ptr).size();
  return matrix_at(j, ptr, v, n, n);
}

bool has_jets(const Poly& p) {
  for (const auto& t : p.terms())
    for (const auto& f : t.mono.factors())
      if (!is_coord_key(f.sym)) return true;
  return false;
}

std::vector<std::vector<Poly>> columns_at(const json& j, const std::string& ptr, const VarTable& v, std::size_t len) {
  const auto& a = get_array(j, ptr);
  std::vector<std::vector<Poly>> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(polys_at(a[i], child(ptr, i), v, len));
  return out;
}

VarTablePtr parse_vars(const json& ring) {
  auto coords = string_list(field(ring, "/ring", "vars"), "/ring/vars");
  std::vector<JetDecl> jets;
  if (const json* js = optional_field(ring, "jets")) {
    const auto& a = get_array(*js, "/ring/jets");
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::string p = child("/ring/jets", i);
      JetDecl d;
      d.name = get_string(field(a[i], p, "name"), child(p, "name"));
      d.depends = string_list(field(a[i], p, "depends"), child(p, "depends"));
      if (const json* mo = optional_field(a[i], "max_order")) {
        if (!mo->is_number_unsigned()) throw ScenarioError(child(p, "max_order"), "expected a non-negative integer");
        d.max_order = mo->get<unsigned>();
      }
      jets.push_back(d);
    }
  }
  return guarded("/ring", [&] { return std::make_shared<const VarTable>(coords, jets); });
}

}  // namespace

// ------------------------------------------------------------------ to json

json scenario_to_json(const Scenario& s) {
  const auto& L = *s.presentation;
  const auto& v = L.vars();
  const auto& R = L.ring();
  json j;
  j["schema"] = kScenarioSchema;
  j["name"] = s.name;
  j["description"] = s.description;

  json ring;
  ring["vars"] = v.coords();
  json jets = json::array();
  for (const auto& d : v.jets()) jets.push_back({{"name", d.name}, {"depends", d.depends}, {"max_order", d.max_order}});
  ring["jets"] = jets;
  ring["ideal"] = poly_list(R.ideal().generators(), v);
  ring["invertibles"] = poly_list(R.invertibles(), v);
  j["ring"] = ring;

  json pres;
  json gens = json::array();
  for (std::size_t i = 0; i < L.size(); ++i)
    gens.push_back({{"name", L.name(i)}, {"coeffs", poly_list(L.anchor(i).coeffs, v)}});
  pres["generators"] = gens;
  if (L.structure_declared()) {
    json c = json::array();
    for (std::size_t a = 0; a < L.size(); ++a) {
      json ca = json::array();
      for (std::size_t b = 0; b < L.size(); ++b) {
        std::vector<Poly> row;
        for (std::size_t k = 0; k < L.size(); ++k) row.push_back(L.c(a, b, k));
        ca.push_back(poly_list(row, v));
      }
      c.push_back(ca);
    }
    pres["structure_constants"] = c;
  }
  pres["syzygies"] = columns_json(L.syzygies(), v);
  j["presentation"] = pres;

  if (s.metric) j["metric"] = matrix_json(*s.metric, v);
  if (s.connection) {
    const auto& c = *s.connection;
    if (c.solve) {
      j["connection"] = "solve";
    } else {
      json cj;
      if (c.carrier.is_L)
        cj["carrier"] = "L";
      else
        cj["carrier"] = {{"rank", c.carrier.rank}, {"syzygies", columns_json(c.carrier.syzygies, v)}};
      cj["convention"] = "row";
      json g = json::array();
      for (const auto& m : c.gamma) g.push_back(matrix_json(m, v));
      cj["gamma"] = g;
      j["connection"] = cj;
    }
  }
  if (s.poisson) {
    json p = json::array();
    for (const auto& row : *s.poisson) p.push_back(poly_list(row, v));
    j["poisson"] = p;
  }
  if (!s.ideal_gens.empty()) j["ideal_gens"] = poly_list(s.ideal_gens, v);
  if (s.idempotent) j["idempotent"] = matrix_json(*s.idempotent, v);
  if (s.gauge) j["gauge"] = {{"matrix", matrix_json(s.gauge->matrix, v)}, {"inverse", matrix_json(s.gauge->inverse, v)}};
  j["tasks"] = s.tasks;
  json golden = json::array();
  for (const auto& g : s.golden) golden.push_back({{"key", g.key}, {"anchor", g.anchor}, {"value", g.value}});
  j["golden"] = golden;
  j["notes"] = s.notes;
  return j;
}

std::string scenario_dump(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

// ------------------------------------------------------------------ from json

Scenario scenario_from_json(const json& j, const ScenarioOptions& opts) {
  if (!j.is_object()) throw ScenarioError("", "expected an object");
  const json& schema = field(j, "", "schema");
  if (!schema.is_number_integer() || schema.get<int>() != kScenarioSchema)
    throw ScenarioError("/schema", "unsupported schema version (expected " + std::to_string(kScenarioSchema) + ")");
  Scenario s;
  s.name = get_string(field(j, "", "name"), "/name");
  if (const json* d = optional_field(j, "description")) s.description = get_string(*d, "/description");

  const json& ring = field(j, "", "ring");
  VarTablePtr v = parse_vars(ring);
  std::vector<Poly> ideal, inv;
  if (const json* id = optional_field(ring, "ideal")) {
    ideal = polys_at(*id, "/ring/ideal", *v);
    for (std::size_t i = 0; i < ideal.size(); ++i)
      if (has_jets(ideal[i])) throw ScenarioError(child("/ring/ideal", i), "ideals must be jet-free");
  }
  if (const json* iv = optional_field(ring, "invertibles")) inv = polys_at(*iv, "/ring/invertibles", *v);
  auto R = guarded("/ring", [&] { return std::make_shared<const QuotientRing>(v, ideal, opts.order, inv); });

  const json& pres = field(j, "", "presentation");
  const auto& gens = get_array(field(pres, "/presentation", "generators"), "/presentation/generators");
  std::vector<std::string> names;
  std::vector<Derivation> anchors;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string p = child("/presentation/generators", i);
    names.push_back(get_string(field(gens[i], p, "name"), child(p, "name")));
    anchors.push_back({polys_at(field(gens[i], p, "coeffs"), child(p, "coeffs"), *v, v->num_coords())});
  }
  std::size_t l = anchors.size();
  std::optional<StructureConstants> sc;
  if (const json* c = optional_field(pres, "structure_constants")) {
    std::string p = "/presentation/structure_constants";
    const auto& a = get_array(*c, p, l);
    StructureConstants st(l);
    for (std::size_t x = 0; x < l; ++x) {
      const auto& ax = get_array(a[x], child(p, x), l);
      for (std::size_t y = 0; y < l; ++y) {
        auto row = polys_at(ax[y], child(child(p, x), y), *v, l);
        for (std::size_t k = 0; k < l; ++k) st.at(x, y, k) = row[k];
      }
    }
    sc = st;
  }
  std::vector<std::vector<Poly>> syz;
  if (const json* sz = optional_field(pres, "syzygies")) syz = columns_at(*sz, "/presentation/syzygies", *v, l);
  s.presentation = guarded("/presentation", [&] {
    return std::make_shared<const LRPresentation>(R, names, anchors, sc, syz);
  });

  if (const json* m = optional_field(j, "metric")) s.metric = matrix_at(*m, "/metric", *v, l, l);

  if (const json* c = optional_field(j, "connection")) {
    ConnectionPayload cp;
    if (c->is_string()) {
      if (c->get<std::string>() != "solve") throw ScenarioError("/connection", "expected \"solve\" or an object");
      if (!s.metric) throw ScenarioError("/connection", "\"solve\" requires a metric");
      cp.solve = true;
      cp.carrier.is_L = true;
      cp.carrier.rank = l;
    } else {
      const json& carrier = field(*c, "/connection", "carrier");
      if (carrier.is_string()) {
        if (carrier.get<std::string>() != "L") throw ScenarioError("/connection/carrier", "expected \"L\" or an object");
        cp.carrier.is_L = true;
        cp.carrier.rank = l;
        cp.carrier.syzygies = syz;
      } else {
        const json& rank = field(carrier, "/connection/carrier", "rank");
        if (!rank.is_number_unsigned()) throw ScenarioError("/connection/carrier/rank", "expected a non-negative integer");
        cp.carrier.rank = rank.get<std::size_t>();
        if (const json* cs = optional_field(carrier, "syzygies"))
          cp.carrier.syzygies = columns_at(*cs, "/connection/carrier/syzygies", *v, cp.carrier.rank);
      }
      if (const json* conv = optional_field(*c, "convention"))
        if (get_string(*conv, "/connection/convention") != "row")
          throw ScenarioError("/connection/convention", "only the row convention is accepted");
      const auto& g = get_array(field(*c, "/connection", "gamma"), "/connection/gamma", l);
      for (std::size_t i = 0; i < l; ++i)
        cp.gamma.push_back(matrix_at(g[i], child("/connection/gamma", i), *v, cp.carrier.rank, cp.carrier.rank));
      // Shape and denominator policy.
      guarded("/connection", [&] { return Connection(s.presentation, cp.carrier, cp.gamma).rank(); });
    }
    s.connection = cp;
  }

  if (const json* p = optional_field(j, "poisson")) {
    std::size_t n = v->num_coords();
    const auto& a = get_array(*p, "/poisson", n);
    std::vector<std::vector<Poly>> pi;
    for (std::size_t i = 0; i < n; ++i) pi.push_back(polys_at(a[i], child("/poisson", i), *v, n));
    s.poisson = pi;
    guarded("/poisson", [&] { return PoissonStructure(v, pi).dim(); });
  }
  if (const json* ig = optional_field(j, "ideal_gens")) {
    s.ideal_gens = polys_at(*ig, "/ideal_gens", *v);
    for (std::size_t i = 0; i < s.ideal_gens.size(); ++i)
      if (has_jets(s.ideal_gens[i])) throw ScenarioError(child("/ideal_gens", i), "ideals must be jet-free");
  }
  if (const json* t = optional_field(j, "idempotent")) s.idempotent = square_matrix_at(*t, "/idempotent", *v);
  if (const json* g = optional_field(j, "gauge")) {
    GaugePayload gp;
    gp.matrix = square_matrix_at(field(*g, "/gauge", "matrix"), "/gauge/matrix", *v);
    gp.inverse = matrix_at(field(*g, "/gauge", "inverse"), "/gauge/inverse", *v, gp.matrix.rows(), gp.matrix.rows());
    s.gauge = gp;
  }
  if (const json* t = optional_field(j, "tasks")) s.tasks = string_list(*t, "/tasks");
  if (const json* g = optional_field(j, "golden")) {
    const auto& a = get_array(*g, "/golden");
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::string p = child("/golden", i);
      Golden gv;
      gv.key = get_string(field(a[i], p, "key"), child(p, "key"));
      gv.anchor = get_string(field(a[i], p, "anchor"), child(p, "anchor"));
      gv.value = field(a[i], p, "value");
      s.golden.push_back(gv);
    }
  }
  if (const json* n = optional_field(j, "notes")) s.notes = string_list(*n, "/notes");
  return s;
}

Scenario load_scenario(const std::string& path, const ScenarioOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("invalid JSON: ") + e.what());
  }
  return scenario_from_json(j, opts);
}

Connection scenario_connection(const Scenario& s) {
  if (!s.connection) throw DomainError("scenario " + s.name + " has no connection");
  const auto& c = *s.connection;
  if (c.solve) return koszul_solve_free(s.presentation, *s.metric);
  return Connection(s.presentation, c.carrier, c.gamma);
}

PoissonStructure scenario_poisson(const Scenario& s) {
  if (!s.poisson) throw DomainError("scenario " + s.name + " has no Poisson structure");
  return PoissonStructure(s.presentation->ring().vars_ptr(), *s.poisson);
}

}  // namespace lrgeom
