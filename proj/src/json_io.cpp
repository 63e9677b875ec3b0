#include "grpd/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace grpd {

namespace {

const Json& need(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

std::string need_string(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_string()) throw ParseError(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

void expect_kind(const Json& j, const char* kind) {
  if (need_string(j, "kind") != kind)
    throw ParseError(std::string("expected kind '") + kind + "', found '" +
                     need_string(j, "kind") + "'");
}

Letter parse_letter(const GenGraph& g, const std::string& s) {
  if (s.empty()) throw ParseError("empty letter");
  bool inv = false;
  std::string name = s;
  if (s.back() == '+' || s.back() == '-') {
    inv = s.back() == '-';
    name = s.substr(0, s.size() - 1);
  }
  Index e = g.edge_names.find(name);
  if (e == kNoIndex) throw ParseError("letter references unknown edge '" + name + "'");
  return {e, inv};
}

Word parse_word(const GenGraph& g, const Json& letters, const Json* base) {
  Word w;
  for (const auto& l : letters) w.letters.push_back(parse_letter(g, l.get<std::string>()));
  if (!w.letters.empty()) {
    w.base = letter_source(g, w.letters.front());
  } else if (base && base->is_string()) {
    Index v = g.vertices.find(base->get<std::string>());
    if (v == kNoIndex) throw ParseError("unknown base vertex '" + base->get<std::string>() + "'");
    w.base = v;
  } else {
    throw ParseError("empty word requires a 'base' vertex");
  }
  if (!word_chained(g, w)) throw ParseError("word is not chained");
  return w;
}

Json word_to_json(const GenGraph& g, const Word& w) {
  Json letters = Json::array();
  for (Letter l : w.letters) letters.push_back(g.edges[l.edge].name + (l.inv ? "-" : "+"));
  return letters;
}

std::vector<std::string> sorted_names(const NameTable& t) {
  std::vector<std::string> out = t.names();
  std::sort(out.begin(), out.end());
  return out;
}

GenGraph graph_from_json(const Json& j) {
  GenGraph g;
  for (const auto& v : need(j, "vertices")) g.add_vertex(v.get<std::string>());
  for (const auto& e : need(j, "edges"))
    g.add_edge(need_string(e, "id"), g.vertices.at(need_string(e, "src")),
               g.vertices.at(need_string(e, "tgt")));
  return g;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

ConcreteGroupoid groupoid_from_json(const Json& j) {
  expect_kind(j, "groupoid");
  if (j.contains("table") && j["table"].is_string()) {
    if (j["table"].get<std::string>() != "generate-from-group")
      throw ParseError("unknown table marker '" + j["table"].get<std::string>() + "'");
    const Json& grp = need(j, "group");
    std::vector<std::string> elements;
    for (const auto& e : need(grp, "elements")) elements.push_back(e.get<std::string>());
    std::vector<std::vector<int>> table;
    for (const auto& row : need(grp, "table")) table.push_back(row.get<std::vector<int>>());
    const Json& objs = need(j, "objects");
    if (objs.size() != 1)
      throw ParseError("generate-from-group requires exactly one object");
    try {
      return from_group_table(objs[0].get<std::string>(), elements, table);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  ConcreteGroupoid g;
  for (const auto& o : need(j, "objects")) g.add_object(o.get<std::string>());
  for (const auto& m : need(j, "morphisms"))
    g.add_morphism(need_string(m, "id"), g.objects.at(need_string(m, "src")),
                   g.objects.at(need_string(m, "tgt")));
  for (const auto& [obj, mor] : need(j, "identity").items())
    g.set_identity(g.objects.at(obj), g.morphisms.at(mor.get<std::string>()));
  for (const auto& [mor, inv] : need(j, "inverse").items())
    g.set_inverse(g.morphisms.at(mor), g.morphisms.at(inv.get<std::string>()));
  for (const auto& row : need(j, "compose")) {
    if (!row.is_array() || row.size() != 3)
      throw ParseError("compose rows must be [f, g, fg]");
    g.set_compose(g.morphisms.at(row[0].get<std::string>()),
                  g.morphisms.at(row[1].get<std::string>()),
                  g.morphisms.at(row[2].get<std::string>()));
  }
  return g;
}

Json to_json(const ConcreteGroupoid& g) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "groupoid";
  j["objects"] = sorted_names(g.objects);
  Json morphisms = Json::array();
  for (const auto& name : sorted_names(g.morphisms)) {
    Index m = g.morphisms.at(name);
    morphisms.push_back(
        {{"id", name}, {"src", g.objects.name(g.src[m])}, {"tgt", g.objects.name(g.tgt[m])}});
  }
  j["morphisms"] = std::move(morphisms);
  Json identity = Json::object();
  for (const auto& name : sorted_names(g.objects))
    identity[name] = g.morphisms.name(g.identity[g.objects.at(name)]);
  j["identity"] = std::move(identity);
  Json inverse = Json::object();
  for (const auto& name : sorted_names(g.morphisms))
    inverse[name] = g.morphisms.name(g.inverse[g.morphisms.at(name)]);
  j["inverse"] = std::move(inverse);
  std::vector<std::array<std::string, 3>> rows;
  for (const auto& [k, v] : g.table())
    rows.push_back({g.morphisms.name(static_cast<Index>(k >> 32)),
                    g.morphisms.name(static_cast<Index>(k & 0xffffffffu)),
                    g.morphisms.name(v)});
  std::sort(rows.begin(), rows.end());
  Json compose = Json::array();
  for (const auto& r : rows) compose.push_back({r[0], r[1], r[2]});
  j["compose"] = std::move(compose);
  return j;
}

PresentedGroupoid presentation_from_json(const Json& j) {
  expect_kind(j, "presentation");
  PresentedGroupoid p;
  p.graph = graph_from_json(j);
  if (j.contains("relations"))
    for (const auto& r : j["relations"]) {
      const Json* base = r.contains("base") ? &r["base"] : nullptr;
      Word lhs = parse_word(p.graph, need(r, "lhs"), base);
      Word rhs = parse_word(p.graph, need(r, "rhs"), base);
      p.relations.push_back({lhs, rhs});
    }
  auto rep = validate(p);
  if (!rep.ok()) throw ParseError("invalid presentation: " + rep.violations.front());
  return p;
}

Json to_json(const PresentedGroupoid& p) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "presentation";
  j["vertices"] = p.graph.vertices.names();
  Json edges = Json::array();
  for (const auto& e : p.graph.edges)
    edges.push_back({{"id", e.name},
                     {"src", p.graph.vertices.name(e.src)},
                     {"tgt", p.graph.vertices.name(e.tgt)}});
  j["edges"] = std::move(edges);
  Json relations = Json::array();
  for (const auto& r : p.relations) {
    Json rel;
    rel["lhs"] = word_to_json(p.graph, r.lhs);
    rel["rhs"] = word_to_json(p.graph, r.rhs);
    rel["base"] = p.graph.vertices.name(r.lhs.base);
    relations.push_back(std::move(rel));
  }
  j["relations"] = std::move(relations);
  return j;
}

Complex2 complex_from_json(const Json& j) {
  expect_kind(j, "complex");
  Complex2 c;
  c.skeleton = graph_from_json(j);
  if (j.contains("cells"))
    for (const auto& cell : j["cells"]) {
      const Json* base = cell.contains("base") ? &cell["base"] : nullptr;
      c.add_cell(need_string(cell, "id"),
                 parse_word(c.skeleton, need(cell, "boundary"), base));
    }
  auto rep = validate(c);
  if (!rep.ok()) throw ParseError("invalid complex: " + rep.violations.front());
  return c;
}

Json to_json(const Complex2& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "complex";
  j["vertices"] = c.skeleton.vertices.names();
  Json edges = Json::array();
  for (const auto& e : c.skeleton.edges)
    edges.push_back({{"id", e.name},
                     {"src", c.skeleton.vertices.name(e.src)},
                     {"tgt", c.skeleton.vertices.name(e.tgt)}});
  j["edges"] = std::move(edges);
  Json cells = Json::array();
  for (const auto& cell : c.cells) {
    Json cj;
    cj["id"] = cell.name;
    cj["boundary"] = word_to_json(c.skeleton, cell.boundary);
    cj["base"] = c.skeleton.vertices.name(cell.boundary.base);
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j;
}

std::vector<Subcomplex> cover_from_json(const Json& j, ComplexPtr parent) {
  expect_kind(j, "cover");
  std::vector<Subcomplex> cover;
  for (const auto& m : need(j, "members")) {
    std::vector<std::string> vs, es, cs;
    for (const auto& v : need(m, "vertices")) vs.push_back(v.get<std::string>());
    if (m.contains("edges"))
      for (const auto& e : m["edges"]) es.push_back(e.get<std::string>());
    if (m.contains("cells"))
      for (const auto& c : m["cells"]) cs.push_back(c.get<std::string>());
    try {
      cover.push_back(make_subcomplex(parent, vs, es, cs));
    } catch (const std::exception& e) {
      throw ParseError(std::string("cover member") +
                       (m.contains("name") ? " '" + need_string(m, "name") + "'" : "") + ": " +
                       e.what());
    }
  }
  return cover;
}

namespace {

FinitePoset poset_from_json(const Json& j) {
  std::vector<std::string> names;
  for (const auto& e : need(j, "elements")) names.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("leq"))
    for (const auto& pair : j["leq"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError("poset leq entries must be pairs");
      covers.push_back({pair[0].get<std::string>(), pair[1].get<std::string>()});
    }
  return FinitePoset::from_cover_relations(names, covers);
}

/// Inline value or a string reference to another file.
Json resolve_value(const Json& v, const std::string& base_dir) {
  if (!v.is_string()) return v;
  std::string path = v.get<std::string>();
  if (!base_dir.empty() && !path.empty() && path.front() != '/')
    path = base_dir + "/" + path;
  return load_json_file(path);
}

}  // namespace

PresDiagram pres_diagram_from_json(const Json& j, const std::string& base_dir) {
  expect_kind(j, "diagram");
  PresDiagram d;
  d.poset = poset_from_json(need(j, "poset"));
  auto rep = d.poset.validate();
  if (!rep.ok()) throw ParseError("invalid poset: " + rep.violations.front());
  d.value.resize(d.poset.elements.size());
  for (const auto& [name, v] : need(j, "values").items())
    d.value[d.poset.elements.at(name)] =
        share(presentation_from_json(resolve_value(v, base_dir)));
  for (std::size_t e = 0; e < d.value.size(); ++e)
    if (!d.value[e])
      throw ParseError("missing value for element '" + d.poset.elements.name(static_cast<Index>(e)) + "'");
  for (const auto& t : need(j, "transitions")) {
    Index from = d.poset.elements.at(need_string(t, "from"));
    Index to = d.poset.elements.at(need_string(t, "to"));
    PresFunctor f;
    f.dom = d.value[from];
    f.cod = d.value[to];
    f.vertex_map.assign(f.dom->graph.vertices.size(), kNoIndex);
    for (const auto& [v, img] : need(t, "vertex_map").items())
      f.vertex_map[f.dom->graph.vertices.at(v)] = f.cod->graph.vertices.at(img.get<std::string>());
    for (Index v = 0; v < f.vertex_map.size(); ++v)
      if (f.vertex_map[v] == kNoIndex)
        throw ParseError("transition vertex_map misses vertex '" +
                         f.dom->graph.vertices.name(v) + "'");
    f.edge_map.resize(f.dom->graph.edges.size());
    std::vector<bool> got(f.dom->graph.edges.size(), false);
    if (t.contains("edge_map"))
      for (const auto& [e, word] : t["edge_map"].items()) {
        Index ei = f.dom->graph.edge_names.at(e);
        Json base = f.cod->graph.vertices.name(f.vertex_map[f.dom->graph.edges[ei].src]);
        f.edge_map[ei] = parse_word(f.cod->graph, word, &base);
        got[ei] = true;
      }
    for (Index e = 0; e < got.size(); ++e)
      if (!got[e])
        throw ParseError("transition edge_map misses edge '" + f.dom->graph.edges[e].name + "'");
    auto frep = validate_endpoints(f);
    if (!frep.ok()) throw ParseError("invalid transition: " + frep.violations.front());
    d.transition[{from, to}] = std::move(f);
  }
  rep = validate_diagram(d);
  if (!rep.ok()) throw ParseError("invalid diagram: " + rep.violations.front());
  return d;
}

namespace {

ConcreteFunctor functor_from_json(const Json& j, GroupoidPtr dom, GroupoidPtr cod) {
  ConcreteFunctor f;
  f.dom = dom;
  f.cod = cod;
  f.object_map.assign(dom->object_count(), kNoIndex);
  f.morphism_map.assign(dom->morphism_count(), kNoIndex);
  for (const auto& [o, img] : need(j, "object_map").items())
    f.object_map[dom->objects.at(o)] = cod->objects.at(img.get<std::string>());
  for (const auto& [m, img] : need(j, "morphism_map").items())
    f.morphism_map[dom->morphisms.at(m)] = cod->morphisms.at(img.get<std::string>());
  for (Index o = 0; o < f.object_map.size(); ++o)
    if (f.object_map[o] == kNoIndex)
      throw ParseError("object_map misses '" + dom->objects.name(o) + "'");
  for (Index m = 0; m < f.morphism_map.size(); ++m)
    if (f.morphism_map[m] == kNoIndex)
      throw ParseError("morphism_map misses '" + dom->morphisms.name(m) + "'");
  auto rep = validate(f);
  if (!rep.ok()) throw ParseError("invalid functor: " + rep.violations.front());
  return f;
}

}  // namespace

ConcreteDiagram concrete_diagram_from_json(const Json& j, const std::string& base_dir) {
  expect_kind(j, "diagram");
  ConcreteDiagram d;
  std::string variance = j.contains("variance") ? j["variance"].get<std::string>()
                                                : "contravariant";
  if (variance == "covariant")
    d.variance = Variance::Covariant;
  else if (variance == "contravariant")
    d.variance = Variance::Contravariant;
  else
    throw ParseError("variance must be covariant or contravariant");
  d.poset = poset_from_json(need(j, "poset"));
  auto rep = d.poset.validate();
  if (!rep.ok()) throw ParseError("invalid poset: " + rep.violations.front());
  d.value.resize(d.poset.elements.size());
  for (const auto& [name, v] : need(j, "values").items())
    d.value[d.poset.elements.at(name)] = share(groupoid_from_json(resolve_value(v, base_dir)));
  for (std::size_t e = 0; e < d.value.size(); ++e)
    if (!d.value[e])
      throw ParseError("missing value for element '" +
                       d.poset.elements.name(static_cast<Index>(e)) + "'");
  for (const auto& t : need(j, "transitions")) {
    Index i = d.poset.elements.at(need_string(t, "from"));
    Index jj = d.poset.elements.at(need_string(t, "to"));
    Index from = d.variance == Variance::Contravariant ? jj : i;
    Index to = d.variance == Variance::Contravariant ? i : jj;
    d.transition[{i, jj}] = functor_from_json(t, d.value[from], d.value[to]);
  }
  rep = validate_diagram(d);
  if (!rep.ok()) throw ParseError("invalid diagram: " + rep.violations.front());
  return d;
}

DeformSquare square_from_json(const Json& j) {
  expect_kind(j, "square");
  DeformSquare s;
  s.A = share(groupoid_from_json(need(j, "A")));
  s.B = share(groupoid_from_json(need(j, "B")));
  s.C = share(groupoid_from_json(need(j, "C")));
  s.D = share(groupoid_from_json(need(j, "D")));
  s.i1 = functor_from_json(need(j, "i1"), s.A, s.B);
  s.i2 = functor_from_json(need(j, "i2"), s.A, s.C);
  s.j1 = functor_from_json(need(j, "j1"), s.B, s.D);
  s.j2 = functor_from_json(need(j, "j2"), s.C, s.D);
  s.lambda.source = compose(s.i1, s.j1);
  s.lambda.target = compose(s.i2, s.j2);
  s.lambda.component.assign(s.A->object_count(), kNoIndex);
  for (const auto& [a, m] : need(j, "lambda").items())
    s.lambda.component[s.A->objects.at(a)] = s.D->morphisms.at(m.get<std::string>());
  for (Index a = 0; a < s.lambda.component.size(); ++a)
    if (s.lambda.component[a] == kNoIndex)
      throw ParseError("lambda misses component at '" + s.A->objects.name(a) + "'");
  auto rep = validate(s.lambda);
  if (!rep.ok()) throw ParseError("invalid lambda: " + rep.violations.front());
  return s;
}

Json to_json(const EquivalenceInvariant& f) {
  Json j;
  j["components"] = f.component_count;
  Json per = Json::array();
  for (const auto& c : f.per_component) {
    Json cj;
    cj["free_rank"] = c.abelian.free_rank;
    cj["torsion"] = c.abelian.torsion;
    if (c.order)
      cj["order"] = *c.order;
    else
      cj["order"] = nullptr;
    per.push_back(std::move(cj));
  }
  j["per_component"] = std::move(per);
  return j;
}

Json to_json(const ConcreteFunctor& f) {
  Json j;
  Json om = Json::object();
  for (const auto& name : sorted_names(f.dom->objects))
    om[name] = f.cod->objects.name(f.object_map[f.dom->objects.at(name)]);
  j["object_map"] = std::move(om);
  Json mm = Json::object();
  for (const auto& name : sorted_names(f.dom->morphisms))
    mm[name] = f.cod->morphisms.name(f.morphism_map[f.dom->morphisms.at(name)]);
  j["morphism_map"] = std::move(mm);
  return j;
}

Json to_json(const NatIso& a) {
  Json j = Json::object();
  for (const auto& name : sorted_names(a.source.dom->objects))
    j[name] = a.source.cod->morphisms.name(a.component[a.source.dom->objects.at(name)]);
  return j;
}

Json to_json(const PresFunctor& f) {
  Json j;
  Json vm = Json::object();
  for (Index v = 0; v < f.dom->graph.vertices.size(); ++v)
    vm[f.dom->graph.vertices.name(v)] = f.cod->graph.vertices.name(f.vertex_map[v]);
  j["vertex_map"] = std::move(vm);
  Json em = Json::object();
  for (Index e = 0; e < f.dom->graph.edges.size(); ++e) {
    Json letters = Json::array();
    for (Letter l : f.edge_map[e].letters)
      letters.push_back(f.cod->graph.edges[l.edge].name + (l.inv ? "-" : "+"));
    em[f.dom->graph.edges[e].name] = std::move(letters);
  }
  j["edge_map"] = std::move(em);
  return j;
}

}  // namespace grpd
